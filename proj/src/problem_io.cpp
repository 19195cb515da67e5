#include "matfun/problem_io.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "matfun/text_format.hpp"

namespace matfun {

namespace {

struct Token {
  std::string_view text;
  int line;   // 1-based
  int index;  // 1-based ordinal within the stream
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int index = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#') {
      ++i;
    }
    tokens.push_back(Token{text.substr(start, i - start), line, ++index});
  }
  return tokens;
}

Complex scalar_at(const std::vector<Token>& tokens, std::size_t position) {
  const Token& token = tokens[position];
  auto value = parse_scalar_token(token.text);
  if (!value) {
    throw ParseError("bad scalar '" + std::string(token.text) + "'", token.line,
                     token.index);
  }
  return *value;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty problem file", 1, 0);

  const Token& header = tokens[0];
  auto n_value = parse_scalar_token(header.text);
  if (!n_value || n_value->imag() != 0.0 || n_value->real() < 1.0 ||
      n_value->real() != std::floor(n_value->real()) || n_value->real() > 4096.0) {
    throw ParseError("dimension header must be a positive integer, got '" +
                         std::string(header.text) + "'",
                     header.line, header.index);
  }
  const int n = static_cast<int>(n_value->real());

  const std::size_t expected = 1 + static_cast<std::size_t>(n) + static_cast<std::size_t>(n) * n;
  if (tokens.size() < expected) {
    const Token& last = tokens.back();
    throw DimensionError("expected " + std::to_string(expected - 1) + " scalars for N=" +
                             std::to_string(n) + ", found " +
                             std::to_string(tokens.size() - 1),
                         last.line, last.index);
  }
  if (tokens.size() > expected) {
    const Token& extra = tokens[expected];
    throw DimensionError("trailing garbage after " + std::to_string(expected - 1) +
                             " scalars: '" + std::string(extra.text) + "'",
                         extra.line, extra.index);
  }

  Vector lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = scalar_at(tokens, 1 + i);
  Matrix tau(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tau(i, j) = scalar_at(tokens, 1 + n + static_cast<std::size_t>(i) * n + j);
    }
  }
  return Problem{DiagonalSpectrum(std::move(lambda)), PerturbationMatrix(std::move(tau))};
}

std::string format_problem(const DiagonalSpectrum& lambda, const PerturbationMatrix& tau) {
  std::string out = std::to_string(lambda.size());
  out += '\n';
  for (int i = 0; i < lambda.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_scalar_exact(lambda[i]);
  }
  out += '\n';
  for (int i = 0; i < tau.size(); ++i) {
    for (int j = 0; j < tau.size(); ++j) {
      if (j > 0) out += ' ';
      out += format_scalar_exact(tau.entries()(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace matfun
