/*
   Copyright 2026 The reslim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RESLIM_ERRORS_HPP
#define RESLIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reslim {

/// Work limit reached before an answer could be produced (degree caps,
/// iteration budgets, integer-range limits of closed-form thresholds).
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// A 1-D minimization could not bracket a finite minimizer.
class bracket_error : public std::runtime_error {
  public:
    explicit bracket_error(const std::string& what) : std::runtime_error(what) {}
};

/// Support points coincide or are so close that an interpolation system
/// is numerically singular.
class degenerate_support_error : public std::runtime_error {
  public:
    explicit degenerate_support_error(const std::string& what) : std::runtime_error(what) {}
};

/// A polynomial does not admit the requested factorization (deconvolution
/// residual above tolerance, or the double-root precondition fails).
class factorization_error : public std::runtime_error {
  public:
    explicit factorization_error(const std::string& what) : std::runtime_error(what) {}
};

/// A certificate batch does not carry the expected sign patterns.
class pattern_error : public std::runtime_error {
  public:
    explicit pattern_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace reslim

#endif // RESLIM_ERRORS_HPP
