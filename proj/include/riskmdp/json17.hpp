#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace riskmdp {

inline std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Render JSON with doubles at 17 significant digits (nlohmann's dump()
/// prints shortest-round-trip numbers; the file formats here pin 17).
inline void write_json17(std::ostream& os, const nlohmann::ordered_json& j, int indent = 0) {
    const std::string pad(std::size_t(indent) * 2, ' ');
    const std::string pad_in(std::size_t(indent + 1) * 2, ' ');
    switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
        os << "{";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << (first ? "\n" : ",\n")
               << pad_in << nlohmann::ordered_json(it.key()).dump() << ": ";
            write_json17(os, it.value(), indent + 1);
            first = false;
        }
        os << "\n" << pad << "}";
        break;
    }
    case nlohmann::ordered_json::value_t::array: {
        os << "[";
        bool first = true;
        for (const auto& v : j) {
            os << (first ? "" : ", ");
            write_json17(os, v, indent);
            first = false;
        }
        os << "]";
        break;
    }
    case nlohmann::ordered_json::value_t::number_float: os << format17(j.get<double>()); break;
    default: os << j.dump(); break;
    }
}

inline std::string dump_json17(const nlohmann::ordered_json& j) {
    std::ostringstream os;
    write_json17(os, j);
    os << "\n";
    return os.str();
}

} // namespace riskmdp
