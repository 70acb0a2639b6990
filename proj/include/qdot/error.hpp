#pragma once

#include <stdexcept>
#include <string>

namespace qdot {

// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user-facing input (parameters, sweep specs). The CLI maps these to exit code 2.
class validation_error : public error {
public:
    using error::error;
};

class not_hermitian : public error {
public:
    using error::error;
};

class negative_eigenvalue : public error {
public:
    using error::error;
};

class invalid_trace : public error {
public:
    using error::error;
};

class incomplete_channel : public error {
public:
    using error::error;
};

class invalid_x_state : public error {
public:
    using error::error;
};

class non_positive_temperature : public validation_error {
public:
    using validation_error::validation_error;
};

class gamma_out_of_range : public validation_error {
public:
    using validation_error::validation_error;
};

class mixed_axis_shape : public error {
public:
    using error::error;
};

// A sweep point failed; what() carries the offending coordinates.
class computation_error : public error {
public:
    using error::error;
};

}  // namespace qdot
