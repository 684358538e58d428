//------------------------------------------------------------------------------
//
//   Copyright 2026 The frechet-features Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

// Arithmetic expressions over code inputs, used for the location and scale
// maps of model files:
//
//   expr    := term   (('+' | '-') term)*
//   term    := unary  (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | primary
//   primary := number | X<k> | exp(expr) | abs(expr) | '(' expr ')'
//
// Inputs are referenced as X1..Xd (or x1..xd).

#include "frechet/common.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

class Expression
{
public:
  static Expression parse(std::string_view text)
  {
    Expression e;
    e.source_ = std::string(text);
    Parser p{text, 0, e.nodes_};
    e.root_ = p.expr();
    p.skip_space();
    if (p.pos != text.size())
    {
      p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
    }
    return e;
  }

  static Expression constant(double value)
  {
    Expression e;
    e.source_ = std::to_string(value);
    e.nodes_.push_back({Op::kConstant, value, 0, 0, 0});
    e.root_ = 0;
    return e;
  }

  double operator()(std::span<double const> inputs) const
  {
    return eval(root_, inputs);
  }

  /// Largest 1-based input index referenced, 0 if none.
  std::size_t max_input() const
  {
    std::size_t m = 0;
    for (auto const &n : nodes_)
    {
      if (n.op == Op::kInput)
      {
        m = std::max(m, n.input + 1);
      }
    }
    return m;
  }

  std::string const &source() const noexcept
  {
    return source_;
  }

private:
  enum class Op
  {
    kConstant,
    kInput,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kExp,
    kAbs
  };

  struct Node
  {
    Op          op;
    double      value;
    std::size_t input;
    std::size_t lhs;
    std::size_t rhs;
  };

  struct Parser
  {
    std::string_view   text;
    std::size_t        pos;
    std::vector<Node> &nodes;

    [[noreturn]] void fail(std::string const &what) const
    {
      throw ParseError("expression '" + std::string(text) + "' at position " +
                       std::to_string(pos) + ": " + what);
    }

    void skip_space()
    {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      {
        ++pos;
      }
    }

    bool accept(char c)
    {
      skip_space();
      if (pos < text.size() && text[pos] == c)
      {
        ++pos;
        return true;
      }
      return false;
    }

    std::size_t add(Node n)
    {
      nodes.push_back(n);
      return nodes.size() - 1;
    }

    std::size_t expr()
    {
      std::size_t lhs = term();
      while (true)
      {
        if (accept('+'))
        {
          lhs = add({Op::kAdd, 0.0, 0, lhs, term()});
        }
        else if (accept('-'))
        {
          lhs = add({Op::kSub, 0.0, 0, lhs, term()});
        }
        else
        {
          return lhs;
        }
      }
    }

    std::size_t term()
    {
      std::size_t lhs = unary();
      while (true)
      {
        if (accept('*'))
        {
          lhs = add({Op::kMul, 0.0, 0, lhs, unary()});
        }
        else if (accept('/'))
        {
          lhs = add({Op::kDiv, 0.0, 0, lhs, unary()});
        }
        else
        {
          return lhs;
        }
      }
    }

    std::size_t unary()
    {
      if (accept('-'))
      {
        return add({Op::kNeg, 0.0, 0, unary(), 0});
      }
      if (accept('+'))
      {
        return unary();
      }
      return primary();
    }

    std::size_t primary()
    {
      skip_space();
      if (pos >= text.size())
      {
        fail("unexpected end of expression");
      }
      if (accept('('))
      {
        std::size_t const inner = expr();
        if (!accept(')'))
        {
          fail("expected ')'");
        }
        return inner;
      }
      char const c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      {
        double v = 0.0;
        auto [ptr, ec] =
            std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc{})
        {
          fail("malformed number");
        }
        pos = static_cast<std::size_t>(ptr - text.data());
        return add({Op::kConstant, v, 0, 0, 0});
      }
      if (std::isalpha(static_cast<unsigned char>(c)))
      {
        std::size_t const start = pos;
        while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos])))
        {
          ++pos;
        }
        std::string_view const name = text.substr(start, pos - start);
        if (name == "exp" || name == "abs")
        {
          if (!accept('('))
          {
            fail("expected '(' after " + std::string(name));
          }
          std::size_t const arg = expr();
          if (!accept(')'))
          {
            fail("expected ')'");
          }
          return add({name == "exp" ? Op::kExp : Op::kAbs, 0.0, 0, arg, 0});
        }
        if ((name[0] == 'X' || name[0] == 'x') && name.size() > 1)
        {
          std::size_t index = 0;
          auto [ptr, ec]    = std::from_chars(name.data() + 1, name.data() + name.size(), index);
          if (ec == std::errc{} && ptr == name.data() + name.size() && index >= 1)
          {
            return add({Op::kInput, 0.0, index - 1, 0, 0});
          }
        }
        pos = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      fail("unexpected '" + std::string(1, c) + "'");
    }
  };

  double eval(std::size_t i, std::span<double const> x) const
  {
    Node const &n = nodes_[i];
    switch (n.op)
    {
    case Op::kConstant:
      return n.value;
    case Op::kInput:
      return x[n.input];
    case Op::kAdd:
      return eval(n.lhs, x) + eval(n.rhs, x);
    case Op::kSub:
      return eval(n.lhs, x) - eval(n.rhs, x);
    case Op::kMul:
      return eval(n.lhs, x) * eval(n.rhs, x);
    case Op::kDiv:
      return eval(n.lhs, x) / eval(n.rhs, x);
    case Op::kNeg:
      return -eval(n.lhs, x);
    case Op::kExp:
      return std::exp(eval(n.lhs, x));
    case Op::kAbs:
      return std::abs(eval(n.lhs, x));
    }
    return 0.0;
  }

  std::string       source_;
  std::vector<Node> nodes_;
  std::size_t       root_ = 0;
};

}  // namespace frechet
