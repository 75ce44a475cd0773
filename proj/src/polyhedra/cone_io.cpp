#include "entrocone/cone_io.hpp"

#include <sstream>

#include <json.hpp>

#include "entrocone/errors.hpp"

namespace entrocone::poly {

using nlohmann::json;

namespace {

json number(const Integer& x)
{
    if (x.fits_slong_p()) return json(x.get_si());
    return json(x.get_str());
}

json rows_json(const std::vector<IntVec>& rows)
{
    json out = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& x : r) row.push_back(number(x));
        out.push_back(std::move(row));
    }
    return out;
}

Rational parse_entry(const json& e, const std::string& where)
{
    if (e.is_number_integer()) return Rational(static_cast<long>(e.get<std::int64_t>()));
    if (e.is_string()) {
        Rational q;
        if (q.set_str(e.get<std::string>(), 10) != 0 || q.get_den() == 0)
            throw FormatError(where + " is not an integer or fraction");
        q.canonicalize();
        return q;
    }
    throw FormatError(where + " must be an integer or a string holding a fraction");
}

std::vector<IntVec> parse_rows(const json& j, const std::string& key, std::size_t d)
{
    std::vector<IntVec> rows;
    if (!j.contains(key)) return rows;
    if (!j[key].is_array()) throw FormatError("cone file: \"" + key + "\" must be an array of rows");
    for (std::size_t i = 0; i < j[key].size(); ++i) {
        const std::string where = "cone file: " + key + "[" + std::to_string(i) + "]";
        const auto& r = j[key][i];
        if (!r.is_array()) throw FormatError(where + " must be an array");
        if (r.size() != d)
            throw FormatError(where + " has " + std::to_string(r.size()) + " entries, expected " + std::to_string(d));
        RatVec v;
        for (std::size_t k = 0; k < r.size(); ++k) v.push_back(parse_entry(r[k], where + "[" + std::to_string(k) + "]"));
        IntVec row = primitive_of(v);
        if (!is_zero(row)) rows.push_back(std::move(row));
    }
    return rows;
}

void text_rows(std::ostringstream& os, const char* title, const std::vector<IntVec>& rows)
{
    os << title << "\n";
    for (const auto& r : rows) os << to_string(r) << "\n";
}

void text_header(std::ostringstream& os, std::size_t d, const std::vector<std::string>& labels)
{
    os << "DIM = " << d << "\n";
    if (!labels.empty()) {
        os << "LABELS\n";
        for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? " " : "") << labels[i];
        os << "\n";
    }
}

}  // namespace

std::string to_json(const HRep& h)
{
    json j;
    j["dimension"] = h.dimension;
    j["labels"] = h.labels;
    j["equalities"] = rows_json(h.equalities);
    j["inequalities"] = rows_json(h.inequalities);
    return j.dump(2);
}

std::string to_json(const VRep& v)
{
    json j;
    j["dimension"] = v.dimension;
    j["labels"] = v.labels;
    j["rays"] = rows_json(v.rays);
    j["lineality"] = rows_json(v.lineality);
    return j.dump(2);
}

std::string to_text(const HRep& h)
{
    std::ostringstream os;
    text_header(os, h.dimension, h.labels);
    text_rows(os, "EQUALITIES", h.equalities);
    text_rows(os, "INEQUALITIES", h.inequalities);
    os << "END\n";
    return os.str();
}

std::string to_text(const VRep& v)
{
    std::ostringstream os;
    text_header(os, v.dimension, v.labels);
    text_rows(os, "RAYS", v.rays);
    text_rows(os, "LINEALITY", v.lineality);
    os << "END\n";
    return os.str();
}

Cone cone_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("cone file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("cone file: top level must be an object");
    if (!j.contains("dimension") || !j["dimension"].is_number_unsigned() || j["dimension"].get<std::size_t>() == 0)
        throw FormatError("cone file: \"dimension\" must be a positive integer");
    const std::size_t d = j["dimension"].get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw FormatError("cone file: \"labels\" must be an array of strings");
        for (std::size_t i = 0; i < j["labels"].size(); ++i) {
            if (!j["labels"][i].is_string())
                throw FormatError("cone file: labels[" + std::to_string(i) + "] must be a string");
            labels.push_back(j["labels"][i].get<std::string>());
        }
        if (!labels.empty() && labels.size() != d) throw FormatError("cone file: \"labels\" length differs from dimension");
    }
    const bool is_h = j.contains("inequalities") || j.contains("equalities");
    const bool is_v = j.contains("rays") || j.contains("lineality");
    if (is_h == is_v)
        throw FormatError("cone file: give either \"inequalities\"/\"equalities\" or \"rays\"/\"lineality\"");
    if (is_h) {
        HRep h{d, parse_rows(j, "equalities", d), parse_rows(j, "inequalities", d), labels};
        return h;
    }
    VRep v{d, parse_rows(j, "rays", d), parse_rows(j, "lineality", d), labels};
    return v;
}

}  // namespace entrocone::poly
