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

// A small TOML subset for model files: top-level `key = value` pairs where a
// value is a basic string, a number, a boolean or an array of those (arrays
// may span lines). Comments start with '#'. Tables, dates and inline tables
// are rejected.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

struct ConfigValue
{
  enum class Kind
  {
    kString,
    kNumber,
    kBool,
    kArray
  };

  Kind                     kind = Kind::kString;
  std::string              text;  ///< string contents, or the number/bool literal
  std::vector<ConfigValue> items;
  std::size_t              line = 0;
};

class Config
{
public:
  static Config parse(std::string_view source)
  {
    Config cfg;
    Reader r{source, 0, 1};
    while (true)
    {
      r.skip_blank_lines();
      if (r.done())
      {
        break;
      }
      std::size_t const line = r.line;
      std::string       key  = r.key();
      r.skip_inline_space();
      if (!r.accept('='))
      {
        r.fail("expected '=' after key '" + key + "'");
      }
      ConfigValue v = r.value();
      v.line        = line;
      r.end_of_line();
      if (!cfg.values_.emplace(key, std::move(v)).second)
      {
        throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
      }
    }
    return cfg;
  }

  static Config read(std::istream &in)
  {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
  }

  bool contains(std::string const &key) const
  {
    return values_.count(key) != 0;
  }

  ConfigValue const &at(std::string const &key) const
  {
    auto it = values_.find(key);
    if (it == values_.end())
    {
      throw ParseError("missing key '" + key + "'");
    }
    return it->second;
  }

  std::string string(std::string const &key) const
  {
    auto const &v = at(key);
    if (v.kind != ConfigValue::Kind::kString)
    {
      throw ParseError(where(v) + "'" + key + "' must be a string");
    }
    return v.text;
  }

  std::vector<std::string> strings(std::string const &key) const
  {
    auto const &v = at(key);
    if (v.kind != ConfigValue::Kind::kArray)
    {
      throw ParseError(where(v) + "'" + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (auto const &item : v.items)
    {
      if (item.kind != ConfigValue::Kind::kString)
      {
        throw ParseError(where(v) + "'" + key + "' must be an array of strings");
      }
      out.push_back(item.text);
    }
    return out;
  }

  double number(std::string const &key) const
  {
    auto const &v = at(key);
    if (v.kind != ConfigValue::Kind::kNumber)
    {
      throw ParseError(where(v) + "'" + key + "' must be a number");
    }
    return detail::parse_double(strip_underscores(v.text), key.c_str());
  }

  std::uint64_t unsigned_integer(std::string const &key) const
  {
    auto const &v = at(key);
    std::string const digits = strip_underscores(v.text);
    std::uint64_t out = 0;
    auto [ptr, ec]    = std::from_chars(digits.data(), digits.data() + digits.size(), out);
    if (v.kind != ConfigValue::Kind::kNumber || ec != std::errc{} ||
        ptr != digits.data() + digits.size())
    {
      throw ParseError(where(v) + "'" + key + "' must be a non-negative integer");
    }
    return out;
  }

  std::map<std::string, ConfigValue> const &values() const noexcept
  {
    return values_;
  }

private:
  static std::string strip_underscores(std::string_view s)
  {
    std::string out;
    for (char c : s)
    {
      if (c != '_')
      {
        out += c;
      }
    }
    return out;
  }

  static std::string where(ConfigValue const &v)
  {
    return "line " + std::to_string(v.line) + ": ";
  }

  struct Reader
  {
    std::string_view text;
    std::size_t      pos;
    std::size_t      line;

    [[noreturn]] void fail(std::string const &what) const
    {
      throw ParseError("line " + std::to_string(line) + ": " + what);
    }

    bool done() const
    {
      return pos >= text.size();
    }

    char peek() const
    {
      return done() ? '\0' : text[pos];
    }

    bool accept(char c)
    {
      if (peek() == c)
      {
        ++pos;
        return true;
      }
      return false;
    }

    void skip_inline_space()
    {
      while (peek() == ' ' || peek() == '\t' || peek() == '\r')
      {
        ++pos;
      }
    }

    void skip_comment()
    {
      if (peek() == '#')
      {
        while (!done() && peek() != '\n')
        {
          ++pos;
        }
      }
    }

    /// Whitespace, comments and newlines.
    void skip_blank_lines()
    {
      while (true)
      {
        skip_inline_space();
        skip_comment();
        if (!accept('\n'))
        {
          return;
        }
        ++line;
      }
    }

    void end_of_line()
    {
      skip_inline_space();
      skip_comment();
      if (!done() && !accept('\n'))
      {
        fail("unexpected trailing characters");
      }
      ++line;
    }

    std::string key()
    {
      if (peek() == '"')
      {
        return basic_string();
      }
      if (peek() == '[')
      {
        fail("tables are not supported in model files");
      }
      std::size_t const start = pos;
      while (!done())
      {
        auto const c = static_cast<unsigned char>(peek());
        if (std::isalnum(c) || c == '_' || c == '-' || c >= 0x80)
        {
          ++pos;
        }
        else
        {
          break;
        }
      }
      if (pos == start)
      {
        fail("expected a key");
      }
      return std::string(text.substr(start, pos - start));
    }

    std::string basic_string()
    {
      ++pos;
      std::string out;
      while (true)
      {
        if (done() || peek() == '\n')
        {
          fail("unterminated string");
        }
        char const c = text[pos++];
        if (c == '"')
        {
          return out;
        }
        if (c == '\\')
        {
          if (done())
          {
            fail("unterminated string");
          }
          char const e = text[pos++];
          switch (e)
          {
          case '"':
          case '\\':
            out += e;
            break;
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          default:
            fail(std::string("unsupported escape '\\") + e + "'");
          }
          continue;
        }
        out += c;
      }
    }

    ConfigValue value()
    {
      skip_inline_space();
      ConfigValue v;
      if (peek() == '"')
      {
        v.kind = ConfigValue::Kind::kString;
        v.text = basic_string();
        return v;
      }
      if (peek() == '[')
      {
        ++pos;
        v.kind = ConfigValue::Kind::kArray;
        while (true)
        {
          skip_blank_lines();
          if (accept(']'))
          {
            return v;
          }
          v.items.push_back(value());
          skip_blank_lines();
          if (accept(']'))
          {
            return v;
          }
          if (!accept(','))
          {
            fail("expected ',' or ']' in array");
          }
        }
      }
      std::size_t const start = pos;
      while (!done() && peek() != ',' && peek() != ']' && peek() != '#' && peek() != '\n' &&
             peek() != ' ' && peek() != '\t' && peek() != '\r')
      {
        ++pos;
      }
      v.text = std::string(text.substr(start, pos - start));
      if (v.text.empty())
      {
        fail("expected a value");
      }
      if (v.text == "true" || v.text == "false")
      {
        v.kind = ConfigValue::Kind::kBool;
        return v;
      }
      try
      {
        detail::parse_double(strip_underscores(v.text), "value");
      }
      catch (ParseError const &)
      {
        fail("cannot parse value '" + v.text + "'");
      }
      v.kind = ConfigValue::Kind::kNumber;
      return v;
    }
  };

  std::map<std::string, ConfigValue> values_;
};

}  // namespace frechet
