#include "munorm/io.hpp"

#include <fstream>
#include <sstream>

namespace munorm::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ValidationError("field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& field) {
    if (!j.is_object()) throw ValidationError("expected a JSON object holding '" + field + "'");
    const auto it = j.find(field);
    if (it == j.end()) field_error(field, "missing");
    return *it;
}

Real real_from_json(const json& j, const std::string& field) {
    if (!j.is_number()) field_error(field, "expected a number");
    return j.get<Real>();
}

long long int_from_json(const json& j, const std::string& field) {
    if (!j.is_number_integer()) field_error(field, "expected an integer");
    return j.get<long long>();
}

const json& array_of(const json& j, const std::string& field) {
    if (!j.is_array()) field_error(field, "expected an array");
    return j;
}

RMatrix real_table(const json& j, const std::string& field) {
    array_of(j, field);
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index(0) : static_cast<Eigen::Index>(array_of(j[0], field + "[0]").size());
    RMatrix M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        const json& row = array_of(j[r], row_field);
        if (static_cast<Eigen::Index>(row.size()) != cols) field_error(row_field, "ragged row");
        for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = real_from_json(row[c], row_field);
    }
    return M;
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ValidationError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                              ": malformed JSON (" + e.what() + ")");
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

Complex complex_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<Real>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<Real>(), j[1].get<Real>()};
    field_error(field, "expected a number or an [re, im] pair");
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

MeasureSpace space_from_json(const json& j) {
    const json& w = array_of(require(j, "weights"), "weights");
    RVector weights(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) weights[i] = real_from_json(w[i], "weights");
    return MeasureSpace(std::move(weights));
}

json to_json(const MeasureSpace& space) {
    json w = json::array();
    for (Eigen::Index j = 0; j < space.weights().size(); ++j) w.push_back(space.weights()[j]);
    return {{"weights", w}};
}

Partition partition_from_json(const json& j, int size) {
    const json& b = array_of(require(j, "blocks"), "blocks");
    std::vector<IndexSet> blocks;
    for (std::size_t k = 0; k < b.size(); ++k) {
        const std::string field = "blocks[" + std::to_string(k) + "]";
        IndexSet block;
        for (const auto& idx : array_of(b[k], field)) block.push_back(static_cast<int>(int_from_json(idx, field)) - 1);
        blocks.push_back(std::move(block));
    }
    return Partition(size, std::move(blocks));
}

json to_json(const Partition& chi) {
    json blocks = json::array();
    for (const auto& b : chi.blocks()) {
        json block = json::array();
        for (int j : b) block.push_back(j + 1);
        blocks.push_back(block);
    }
    return {{"blocks", blocks}};
}

CMatrix matrix_from_json(const json& j) {
    const RMatrix re = real_table(require(j, "re"), "re");
    RMatrix im = RMatrix::Zero(re.rows(), re.cols());
    if (j.contains("im")) {
        im = real_table(j["im"], "im");
        if (im.rows() != re.rows() || im.cols() != re.cols()) field_error("im", "shape differs from 're'");
    }
    CMatrix M(re.rows(), re.cols());
    M.real() = re;
    M.imag() = im;
    return M;
}

json to_json(const CMatrix& M) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        json rr = json::array(), ri = json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            rr.push_back(M(r, c).real());
            ri.push_back(M(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return {{"re", re}, {"im", im}};
}

Endomorphism endomorphism_from_json(const json& j, const MeasureSpace& space) {
    const json& m = array_of(require(j, "map"), "map");
    std::vector<int> table;
    for (const auto& v : m) table.push_back(static_cast<int>(int_from_json(v, "map")) - 1);
    return Endomorphism(space, std::move(table));
}

CMatrix basis_from_json(const json& j, int size, bool* orthonormalize) {
    const json& v = array_of(require(j, "vectors"), "vectors");
    CMatrix out(size, static_cast<Eigen::Index>(v.size()));
    for (std::size_t c = 0; c < v.size(); ++c) {
        const std::string field = "vectors[" + std::to_string(c) + "]";
        const json& vec = array_of(v[c], field);
        if (static_cast<int>(vec.size()) != size) field_error(field, "expected length " + std::to_string(size));
        for (int r = 0; r < size; ++r) out(r, c) = complex_from_json(vec[r], field);
    }
    if (orthonormalize) {
        *orthonormalize = false;
        if (j.contains("orthonormalize")) {
            if (!j["orthonormalize"].is_boolean()) field_error("orthonormalize", "expected a boolean");
            *orthonormalize = j["orthonormalize"].get<bool>();
        }
    }
    return out;
}

circle::EventuallyPeriodicSeq sequence_from_json(const json& j) {
    auto period = [&](const std::string& field) {
        std::vector<Complex> out;
        for (const auto& v : array_of(require(j, field), field)) out.push_back(complex_from_json(v, field));
        return out;
    };
    std::map<circle::Index, Complex> middle;
    if (j.contains("middle")) {
        const json& m = j["middle"];
        if (!m.is_object()) field_error("middle", "expected an object keyed by integer index");
        for (const auto& [key, value] : m.items()) {
            circle::Index k = 0;
            try {
                std::size_t used = 0;
                k = std::stoll(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                field_error("middle", "key '" + key + "' is not an integer");
            }
            middle[k] = complex_from_json(value, "middle." + key);
        }
    }
    const circle::Index k0 = j.contains("k0") ? int_from_json(j["k0"], "k0") : 0;
    return circle::EventuallyPeriodicSeq(period("left"), period("right"), std::move(middle), k0);
}

json to_json(const circle::EventuallyPeriodicSeq& seq) {
    json left = json::array(), right = json::array(), middle = json::object();
    for (const auto& v : seq.left()) left.push_back(to_json(v));
    for (const auto& v : seq.right()) right.push_back(to_json(v));
    for (const auto& [k, v] : seq.middle()) middle[std::to_string(k)] = to_json(v);
    return {{"left", left}, {"right", right}, {"middle", middle}, {"k0", seq.k0()}};
}

circle::BandOperator band_from_json(const json& j) {
    if (j.is_object() && j.contains("multiplier")) {
        const json& m = j["multiplier"];
        if (!m.is_object()) field_error("multiplier", "expected an object keyed by Fourier index");
        std::map<circle::Index, Complex> g;
        for (const auto& [key, value] : m.items()) {
            try {
                g[std::stoll(key)] = complex_from_json(value, "multiplier." + key);
            } catch (const std::logic_error&) {
                field_error("multiplier", "key '" + key + "' is not an integer");
            }
        }
        return circle::dt_from_multiplier(g);
    }
    if (j.is_object() && j.contains("diagonal"))
        return circle::to_band_operator(circle::dt_from_conv(sequence_from_json(j["diagonal"])));

    const long long tau = int_from_json(require(j, "tau"), "tau");
    const long long band = int_from_json(require(j, "band"), "band");
    if (tau < 1) field_error("tau", "must be at least 1");
    if (band < 0) field_error("band", "must be nonnegative");
    const json& rows = array_of(require(j, "coeffs"), "coeffs");
    if (static_cast<long long>(rows.size()) != tau) field_error("coeffs", "expected " + std::to_string(tau) + " rows");
    CMatrix c(tau, 2 * band + 1);
    for (long long l = 0; l < tau; ++l) {
        const std::string field = "coeffs[" + std::to_string(l) + "]";
        const json& row = array_of(rows[l], field);
        if (static_cast<long long>(row.size()) != 2 * band + 1)
            field_error(field, "expected " + std::to_string(2 * band + 1) + " entries");
        for (long long k = 0; k < 2 * band + 1; ++k) c(l, k) = complex_from_json(row[k], field);
    }
    circle::BandOperator::Perturbation p;
    if (j.contains("perturbation")) {
        for (const auto& entry : array_of(j["perturbation"], "perturbation")) {
            if (!entry.is_array() || entry.size() != 3) field_error("perturbation", "entries are [row, col, z]");
            const auto row = int_from_json(entry[0], "perturbation");
            const auto col = int_from_json(entry[1], "perturbation");
            p[{row, col}] += complex_from_json(entry[2], "perturbation");
        }
    }
    return circle::BandOperator(static_cast<int>(tau), static_cast<int>(band), std::move(c), std::move(p));
}

json to_json(const circle::BandOperator& W) {
    json rows = json::array();
    for (int l = 0; l < W.tau(); ++l) {
        json row = json::array();
        for (Eigen::Index k = 0; k < W.coeffs().cols(); ++k) row.push_back(to_json(W.coeffs()(l, k)));
        rows.push_back(row);
    }
    json p = json::array();
    for (const auto& [pos, delta] : W.perturbation()) p.push_back(json::array({pos.first, pos.second, to_json(delta)}));
    return {{"tau", W.tau()}, {"band", W.band()}, {"coeffs", rows}, {"perturbation", p}};
}

json to_json(const EntropyReport& report, Real log_scale) {
    auto scaled = [&](const std::vector<Real>& v) {
        json out = json::array();
        for (Real x : v) out.push_back(x * log_scale);
        return out;
    };
    json j = {{"n", report.n},
              {"values", scaled(report.values)},
              {"rates", scaled(report.rates)},
              {"differences", scaled(report.differences)},
              {"finest_partition", report.finest_partition}};
    j["closed_form"] = report.closed_form ? json(*report.closed_form * log_scale) : json(nullptr);
    return j;
}

}  // namespace munorm::io
