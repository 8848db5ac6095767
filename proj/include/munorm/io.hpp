#ifndef MUNORM_IO_HPP
#define MUNORM_IO_HPP

#include <string>

#include <json.hpp>

#include "munorm/circle.hpp"
#include "munorm/entropy.hpp"

// JSON forms of the library types. Atom indices are 1-based on disk; circle
// indices are plain integers. Complex scalars are [re, im] pairs (a bare
// number is read as a real value).
namespace munorm::io {

using nlohmann::json;

/// Reads and parses a JSON file; parse failures report line and column.
json read_json_file(const std::string& path);
json parse_json(const std::string& text, const std::string& origin = "<input>");

Complex complex_from_json(const json& j, const std::string& field);
json to_json(Complex z);

/// {"weights": [...]}
MeasureSpace space_from_json(const json& j);
json to_json(const MeasureSpace& space);

/// {"blocks": [[1, 2], [3]]}
Partition partition_from_json(const json& j, int size);
json to_json(const Partition& chi);

/// {"re": [[...]], "im": [[...]]}; "im" may be omitted.
CMatrix matrix_from_json(const json& j);
json to_json(const CMatrix& M);

/// {"map": [...]} with 1-based targets.
Endomorphism endomorphism_from_json(const json& j, const MeasureSpace& space);

/// {"vectors": [[z, ...], ...], "orthonormalize": bool}; returns vectors as columns.
CMatrix basis_from_json(const json& j, int size, bool* orthonormalize);

/// {"left": [...], "right": [...], "middle": {"k": z}, "k0": n}
circle::EventuallyPeriodicSeq sequence_from_json(const json& j);
json to_json(const circle::EventuallyPeriodicSeq& seq);

/// {"tau": t, "band": b, "coeffs": [[z x (2b+1)] x t], "perturbation": [[row, col, z], ...]}
/// or the multiplier shorthand {"multiplier": {"k": g_k, ...}}, or a diagonal
/// convolution {"diagonal": <sequence>} whose tails agree.
circle::BandOperator band_from_json(const json& j);
json to_json(const circle::BandOperator& W);

json to_json(const EntropyReport& report, Real log_scale = 1.0);

}  // namespace munorm::io

#endif  // MUNORM_IO_HPP
