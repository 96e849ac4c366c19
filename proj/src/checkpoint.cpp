#include "grbm/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "grbm/errors.hpp"

namespace grbm {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint io assumes a little-endian host");

void write_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& in, const char* what) {
    std::uint32_t v;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw DataError(std::string("checkpoint truncated reading ") + what);
    return v;
}

std::uint64_t read_u64(std::istream& in, const char* what) {
    std::uint64_t v;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw DataError(std::string("checkpoint truncated reading ") + what);
    return v;
}

double read_f64(std::istream& in, const char* what) {
    double v;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw DataError(std::string("checkpoint truncated reading ") + what);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const RbmModel& model, std::uint64_t step) {
    model.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open checkpoint for writing: " + path);
    out.write("GRBM", 4);
    write_u32(out, 1u);
    const int I = model.visible();
    const int J = model.hidden();
    write_u32(out, static_cast<std::uint32_t>(I));
    write_u32(out, static_cast<std::uint32_t>(J));
    for (int i = 0; i < I; ++i) write_f64(out, model.b[i]);
    for (int j = 0; j < J; ++j) write_f64(out, model.c[j]);
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < J; ++j) write_f64(out, model.W(i, j));
    write_u64(out, step);
    if (!out) throw DataError("write failed for checkpoint: " + path);
}

void append_head(const std::string& path, const SoftmaxHead& head) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw DataError("cannot open checkpoint for appending: " + path);
    out.write("HEAD", 4);
    write_u32(out, static_cast<std::uint32_t>(head.classes()));
    for (Eigen::Index j = 0; j < head.U.rows(); ++j)
        for (Eigen::Index k = 0; k < head.U.cols(); ++k) write_f64(out, head.U(j, k));
    for (Eigen::Index k = 0; k < head.d.size(); ++k) write_f64(out, head.d[k]);
    if (!out) throw DataError("write failed for checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint: " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "GRBM", 4) != 0)
        throw DataError("bad checkpoint magic in " + path);
    const std::uint32_t version = read_u32(in, "version");
    if (version != 1u)
        throw DataError("unsupported checkpoint version " + std::to_string(version));
    const auto I = static_cast<int>(read_u32(in, "visible count"));
    const auto J = static_cast<int>(read_u32(in, "hidden count"));

    Checkpoint ck;
    ck.model.b.resize(I);
    ck.model.c.resize(J);
    ck.model.W.resize(I, J);
    for (int i = 0; i < I; ++i) ck.model.b[i] = read_f64(in, "visible bias");
    for (int j = 0; j < J; ++j) ck.model.c[j] = read_f64(in, "hidden bias");
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < J; ++j) ck.model.W(i, j) = read_f64(in, "weights");
    ck.step = read_u64(in, "step counter");
    ck.model.validate();

    char tag[4];
    if (in.read(tag, 4)) {
        if (std::memcmp(tag, "HEAD", 4) != 0)
            throw DataError("unknown trailing section in " + path);
        const auto K = static_cast<int>(read_u32(in, "class count"));
        SoftmaxHead head;
        head.U.resize(J, K);
        head.d.resize(K);
        for (int j = 0; j < J; ++j)
            for (int k = 0; k < K; ++k) head.U(j, k) = read_f64(in, "head weights");
        for (int k = 0; k < K; ++k) head.d[k] = read_f64(in, "head bias");
        ck.head = std::move(head);
    }
    return ck;
}

}  // namespace grbm
