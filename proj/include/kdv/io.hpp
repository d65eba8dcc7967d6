#ifndef KDV_IO_HPP
#define KDV_IO_HPP

#include <string>

#include "kdv/spectral.hpp"

namespace kdv {

/// Parses {"kappas": [...], "c": [...], "t": 0, "label": "..."}; "t" and
/// "label" are optional. Throws InvalidData on malformed documents. Does not
/// run validate().
SpectralData parse_spectral_data(const std::string& json_text);

SpectralData load_spectral_data(const std::string& path);

/// Canonical (sorted keys) JSON form of the data.
std::string to_json(const SpectralData& data);

}  // namespace kdv

#endif  // KDV_IO_HPP
