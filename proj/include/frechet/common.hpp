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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <exception>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace frechet {

//------------------------------------------------------------------------------
// Error hierarchy. Everything thrown by the library derives from Error.
//------------------------------------------------------------------------------

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// Probability grid malformed, or two objects live on different grids.
class GridError : public Error
{
public:
  using Error::Error;
};

/// Data rejected by validation; `index()` is the first offending position.
class ValidationError : public Error
{
public:
  ValidationError(std::string const &what, std::size_t index)
    : Error(what + " (index " + std::to_string(index) + ")")
    , index_(index)
  {}

  std::size_t index() const noexcept
  {
    return index_;
  }

private:
  std::size_t index_;
};

class SizeError : public Error
{
public:
  using Error::Error;
};

/// A quantity that must be strictly positive (variance, minimal cost) vanished.
class DegenerateError : public Error
{
public:
  using Error::Error;
};

/// The contrast has no minimiser in its second argument.
class NonCoerciveError : public Error
{
public:
  using Error::Error;
};

class DesignError : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  using Error::Error;
};

/// A generated model output violates a model constraint; `row()` is the input row.
class ModelError : public Error
{
public:
  ModelError(std::string const &what, std::size_t row)
    : Error(what + " (input row " + std::to_string(row) + ")")
    , row_(row)
  {}

  std::size_t row() const noexcept
  {
    return row_;
  }

private:
  std::size_t row_;
};

//------------------------------------------------------------------------------
// Dense row-major matrix of doubles.
//------------------------------------------------------------------------------

class Matrix
{
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
    : rows_(rows)
    , cols_(cols)
    , data_(rows * cols, fill)
  {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows)
    , cols_(cols)
    , data_(std::move(data))
  {
    if (data_.size() != rows_ * cols_)
    {
      throw SizeError("matrix data size does not match its shape");
    }
  }

  std::size_t rows() const noexcept
  {
    return rows_;
  }
  std::size_t cols() const noexcept
  {
    return cols_;
  }

  double &operator()(std::size_t r, std::size_t c)
  {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const
  {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r)
  {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double const> row(std::size_t r) const
  {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double> const &data() const noexcept
  {
    return data_;
  }

  bool operator==(Matrix const &) const = default;

private:
  std::size_t         rows_ = 0;
  std::size_t         cols_ = 0;
  std::vector<double> data_;
};

//------------------------------------------------------------------------------
// Deterministic reductions.
//------------------------------------------------------------------------------

/// Sum with a fixed binary reduction tree. The result depends only on the
/// input sequence, never on how the caller scheduled the work that produced it.
inline double pairwise_sum(std::span<double const> values)
{
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf)
  {
    double s = 0.0;
    for (double v : values)
    {
      s += v;
    }
    return s;
  }
  std::size_t const half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline double pairwise_mean(std::span<double const> values)
{
  return pairwise_sum(values) / static_cast<double>(values.size());
}

/// pairwise_sum of term(k) for k in [begin, end), without materialising the terms.
template <typename Term>
double pairwise_sum_of(std::size_t begin, std::size_t end, Term const &term)
{
  constexpr std::size_t kLeaf = 8;
  if (end - begin <= kLeaf)
  {
    double s = 0.0;
    for (std::size_t k = begin; k < end; ++k)
    {
      s += term(k);
    }
    return s;
  }
  std::size_t const mid = begin + (end - begin) / 2;
  return pairwise_sum_of(begin, mid, term) + pairwise_sum_of(mid, end, term);
}

//------------------------------------------------------------------------------
// Threading. Work is split into index ranges and every index writes only its
// own output slot, so results are identical for any thread count.
//------------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
  {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
  {
    s.remove_suffix(1);
  }
  return s;
}

inline std::atomic<unsigned> &thread_count_setting()
{
  static std::atomic<unsigned> count{0};
  return count;
}
}  // namespace detail

/// Number of worker threads used by parallel loops; 0 means hardware concurrency.
inline void set_thread_count(unsigned count)
{
  detail::thread_count_setting().store(count);
}

inline unsigned thread_count()
{
  unsigned n = detail::thread_count_setting().load();
  if (n == 0)
  {
    n = std::max(1u, std::thread::hardware_concurrency());
  }
  return n;
}

/// Calls `body(begin, end)` on disjoint ranges covering [0, count).
template <typename Body>
void parallel_for(std::size_t count, Body &&body)
{
  std::size_t const workers =
      std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1 || count < 2)
  {
    body(std::size_t{0}, count);
    return;
  }
  std::size_t const chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
  {
    std::size_t const begin = w * chunk;
    std::size_t const end   = std::min(count, begin + chunk);
    if (begin >= end)
    {
      break;
    }
    pool.emplace_back([&, w, begin, end] {
      try
      {
        body(begin, end);
      }
      catch (...)
      {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto const &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace frechet
