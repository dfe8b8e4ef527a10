#include "chlab/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "chlab/errors.hpp"

namespace chlab {

static_assert(std::endian::native == std::endian::little,
              "snapshot layout assumes a little-endian host");

namespace {

constexpr char magic[4] = {'C', 'H', 'S', '1'};
constexpr std::uint32_t version = 1;

template <class T>
void put(std::string& buf, const T& v) {
    const auto* p = reinterpret_cast<const char*>(&v);
    buf.append(p, sizeof(T));
}

template <class T>
T take(const std::string& buf, std::size_t& off) {
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

} // namespace

void write_snapshot(const Field& f, const std::filesystem::path& path) {
    std::string buf;
    buf.reserve(40 + 8 * f.size());
    buf.append(magic, 4);
    put(buf, version);
    put(buf, static_cast<std::uint64_t>(f.size()));
    put(buf, f.grid().length());
    put(buf, f.time);
    put(buf, f.alpha_tag);
    for (double v : f.samples()) put(buf, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("write_snapshot: cannot open " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out)
        throw FormatError("write_snapshot: write failed for " + path.string());
}

Field read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("read_snapshot: cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

    if (buf.size() < 40)
        throw FormatError("read_snapshot: truncated file " + path.string());
    if (std::memcmp(buf.data(), magic, 4) != 0)
        throw FormatError("read_snapshot: bad magic in " + path.string() +
                          " (expected \"CHS1\")");
    std::size_t off = 4;
    const auto ver = take<std::uint32_t>(buf, off);
    if (ver != version)
        throw FormatError("read_snapshot: unsupported version " +
                          std::to_string(ver));
    const auto n = take<std::uint64_t>(buf, off);
    const double period = take<double>(buf, off);
    const double time = take<double>(buf, off);
    const double alpha = take<double>(buf, off);
    if (buf.size() != 40 + 8 * n)
        throw FormatError("read_snapshot: truncated file " + path.string() +
                          " (expected " + std::to_string(40 + 8 * n) +
                          " bytes, got " + std::to_string(buf.size()) + ")");
    std::vector<double> samples(n);
    for (std::uint64_t j = 0; j < n; ++j) samples[j] = take<double>(buf, off);

    Field f(Grid(n, period), std::move(samples));
    f.time = time;
    f.alpha_tag = alpha;
    return f;
}

} // namespace chlab
