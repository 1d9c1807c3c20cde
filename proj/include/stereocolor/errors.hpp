#pragma once

#include <stdexcept>
#include <string>

namespace stereocolor {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Target covariance has an eigenvalue below the inversion threshold.
class NearSingularCovariance : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Image smaller than the SSIM window.
class TooSmall : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class DatasetError : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public DatasetError {
public:
    using DatasetError::DatasetError;
};

class MixedLayout : public DatasetError {
public:
    using DatasetError::DatasetError;
};

class TooFewScenes : public DatasetError {
public:
    using DatasetError::DatasetError;
};

}  // namespace stereocolor
