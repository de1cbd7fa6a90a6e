/*
   Copyright 2026 The frog authors

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

#pragma once

#include <stdexcept>
#include <string>

namespace frog {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class OutOfRange : public Error {
public:
    using Error::Error;
};

// A sequence description whose values leave (0,1) or whose parameters are
// outside their declared ranges.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// Malformed or structurally incomplete configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Path enumeration refused (L above the oracle guard).
class TooLarge : public Error {
public:
    using Error::Error;
};

// One of the two-sided miss-probability bounds failed. Always a bug.
class BoundViolation : public Error {
public:
    using Error::Error;
};

// Requested simulation exceeds the configured work budget.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

}  // namespace frog
