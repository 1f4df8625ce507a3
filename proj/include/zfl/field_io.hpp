#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/report.hpp"
#include "zfl/spectral_field.hpp"

namespace zfl {

/// Snapshot as CSV with columns x,u (17 significant digits).
inline void write_field_csv(const SpectralField& u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open field CSV for writing: " + path);
    out << "x,u\n";
    for (std::size_t i = 0; i < u.grid().size(); ++i)
        out << format_double(u.grid().x(i)) << ',' << format_double(u.values()[i]) << '\n';
    if (!out) throw IoError("failed while writing field CSV: " + path);
}

/** Compact binary dump. Layout (little-endian):
 *      bytes 0..3   magic "ZFL1"
 *      u64          N
 *      f64          L, alpha, t
 *      N x f64      values
 */
struct FieldDump {
    std::uint64_t n = 0;
    double L = 0.0;
    double alpha = 0.0;
    double t = 0.0;
    std::vector<double> values;
};

namespace detail {
template <typename T>
void put_le(std::ofstream& out, T v) {
    static_assert(sizeof(T) == 8);
    unsigned char buf[8];
    std::memcpy(buf, &v, 8);
    out.write(reinterpret_cast<const char*>(buf), 8);
}
template <typename T>
T get_le(std::ifstream& in) {
    static_assert(sizeof(T) == 8);
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    T v;
    std::memcpy(&v, buf, 8);
    return v;
}
}  // namespace detail

inline void write_field_dump(const SpectralField& u, double alpha, double t,
                             const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open dump for writing: " + path);
    out.write("ZFL1", 4);
    detail::put_le<std::uint64_t>(out, u.grid().size());
    detail::put_le<double>(out, u.grid().half_length());
    detail::put_le<double>(out, alpha);
    detail::put_le<double>(out, t);
    for (double v : u.values()) detail::put_le<double>(out, v);
    if (!out) throw IoError("failed while writing dump: " + path);
}

inline FieldDump read_field_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dump for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "ZFL1")
        throw IoError("bad magic in dump file: " + path);
    FieldDump d;
    d.n = detail::get_le<std::uint64_t>(in);
    d.L = detail::get_le<double>(in);
    d.alpha = detail::get_le<double>(in);
    d.t = detail::get_le<double>(in);
    d.values.resize(d.n);
    for (auto& v : d.values) v = detail::get_le<double>(in);
    if (!in) throw IoError("truncated dump file: " + path);
    return d;
}

}  // namespace zfl
