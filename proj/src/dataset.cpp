#include "grbm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "grbm/digest.hpp"
#include "grbm/errors.hpp"

namespace grbm {

namespace {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;
constexpr std::size_t kCifarRecord = 3073;  // 1 label byte + 32*32*3 pixels

std::uint32_t read_be32(std::istream& in, const std::string& path, const char* what) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4))
        throw DataError(path + ": truncated reading " + what);
    return (std::uint32_t{buf[0]} << 24) | (std::uint32_t{buf[1]} << 16) |
           (std::uint32_t{buf[2]} << 8) | std::uint32_t{buf[3]};
}

void write_be32(std::ostream& out, std::uint32_t v) {
    const unsigned char buf[4] = {
        static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
        static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

std::vector<unsigned char> read_exact(std::istream& in, std::size_t n,
                                      const std::string& path, const char* what) {
    std::vector<unsigned char> buf(n);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n)))
        throw DataError(path + ": truncated reading " + what);
    return buf;
}

}  // namespace

int Dataset::num_classes() const {
    if (!labels || labels->empty()) return 0;
    return *std::max_element(labels->begin(), labels->end()) + 1;
}

RealDataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw DataError("cannot open IDX image file: " + images_path);
    const std::uint32_t img_magic = read_be32(img, images_path, "magic");
    if (img_magic != kIdxImagesMagic)
        throw DataError(images_path + ": bad IDX image magic 0x" +
                        [&] { char b[16]; std::snprintf(b, sizeof b, "%08x", img_magic); return std::string(b); }());
    const std::uint32_t count = read_be32(img, images_path, "image count");
    const std::uint32_t rows = read_be32(img, images_path, "row count");
    const std::uint32_t cols = read_be32(img, images_path, "column count");
    const std::size_t dim = std::size_t{rows} * cols;
    const auto pixels = read_exact(img, std::size_t{count} * dim, images_path, "pixels");

    std::ifstream lbl(labels_path, std::ios::binary);
    if (!lbl) throw DataError("cannot open IDX label file: " + labels_path);
    const std::uint32_t lbl_magic = read_be32(lbl, labels_path, "magic");
    if (lbl_magic != kIdxLabelsMagic)
        throw DataError(labels_path + ": bad IDX label magic 0x" +
                        [&] { char b[16]; std::snprintf(b, sizeof b, "%08x", lbl_magic); return std::string(b); }());
    const std::uint32_t lbl_count = read_be32(lbl, labels_path, "label count");
    if (lbl_count != count)
        throw DataError("IDX image/label count mismatch: " + std::to_string(count) +
                        " images vs " + std::to_string(lbl_count) + " labels");
    const auto raw_labels = read_exact(lbl, lbl_count, labels_path, "labels");

    RealDataset out;
    out.samples.resize(count, static_cast<Eigen::Index>(dim));
    for (std::uint32_t n = 0; n < count; ++n)
        for (std::size_t k = 0; k < dim; ++k)
            out.samples(n, static_cast<Eigen::Index>(k)) = pixels[n * dim + k] / 255.0;
    out.labels = std::vector<int>(raw_labels.begin(), raw_labels.end());
    out.name = "idx";
    out.source_digest = sha256_file(images_path) + ":" + sha256_file(labels_path);
    return out;
}

void write_idx(const std::string& images_path, const std::string& labels_path,
               const Eigen::Ref<const Eigen::MatrixXd>& samples,
               const std::vector<int>& labels, int rows, int cols) {
    if (samples.cols() != Eigen::Index{rows} * cols)
        throw DimensionError("IDX writer: samples have " + std::to_string(samples.cols()) +
                             " features, expected " + std::to_string(rows * cols));
    if (static_cast<Eigen::Index>(labels.size()) != samples.rows())
        throw DimensionError("IDX writer: label count does not match sample count");

    std::ofstream img(images_path, std::ios::binary | std::ios::trunc);
    if (!img) throw DataError("cannot open IDX image file for writing: " + images_path);
    write_be32(img, kIdxImagesMagic);
    write_be32(img, static_cast<std::uint32_t>(samples.rows()));
    write_be32(img, static_cast<std::uint32_t>(rows));
    write_be32(img, static_cast<std::uint32_t>(cols));
    for (Eigen::Index n = 0; n < samples.rows(); ++n)
        for (Eigen::Index k = 0; k < samples.cols(); ++k) {
            const auto byte =
                static_cast<unsigned char>(std::lround(samples(n, k) * 255.0));
            img.put(static_cast<char>(byte));
        }

    std::ofstream lbl(labels_path, std::ios::binary | std::ios::trunc);
    if (!lbl) throw DataError("cannot open IDX label file for writing: " + labels_path);
    write_be32(lbl, kIdxLabelsMagic);
    write_be32(lbl, static_cast<std::uint32_t>(labels.size()));
    for (int v : labels) lbl.put(static_cast<char>(static_cast<unsigned char>(v)));
}

RealDataset load_cifar10(const std::vector<std::string>& batch_paths) {
    std::vector<std::vector<unsigned char>> batches;
    std::size_t total_records = 0;
    std::string digest;
    for (const auto& path : batch_paths) {
        std::ifstream in(path, std::ios::binary | std::ios::ate);
        if (!in) throw DataError("cannot open CIFAR-10 batch: " + path);
        const auto size = static_cast<std::size_t>(in.tellg());
        if (size == 0 || size % kCifarRecord != 0)
            throw DataError(path + ": size " + std::to_string(size) +
                            " is not a positive multiple of " + std::to_string(kCifarRecord));
        in.seekg(0);
        batches.push_back(read_exact(in, size, path, "records"));
        total_records += size / kCifarRecord;
        if (!digest.empty()) digest += ":";
        digest += sha256_file(path);
    }

    RealDataset out;
    out.samples.resize(static_cast<Eigen::Index>(total_records), 3072);
    out.labels = std::vector<int>();
    out.labels->reserve(total_records);
    Eigen::Index row = 0;
    for (const auto& bytes : batches) {
        for (std::size_t off = 0; off < bytes.size(); off += kCifarRecord) {
            out.labels->push_back(bytes[off]);
            for (int k = 0; k < 3072; ++k)
                out.samples(row, k) = bytes[off + 1 + static_cast<std::size_t>(k)] / 255.0;
            ++row;
        }
    }
    out.name = "cifar10";
    out.source_digest = digest;
    return out;
}

void write_cifar10(const std::string& path,
                   const Eigen::Ref<const Eigen::MatrixXd>& samples,
                   const std::vector<int>& labels) {
    if (samples.cols() != 3072)
        throw DimensionError("CIFAR-10 writer expects 3072 features");
    if (static_cast<Eigen::Index>(labels.size()) != samples.rows())
        throw DimensionError("CIFAR-10 writer: label count does not match sample count");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open CIFAR-10 batch for writing: " + path);
    for (Eigen::Index n = 0; n < samples.rows(); ++n) {
        out.put(static_cast<char>(static_cast<unsigned char>(labels[n])));
        for (Eigen::Index k = 0; k < 3072; ++k)
            out.put(static_cast<char>(
                static_cast<unsigned char>(std::lround(samples(n, k) * 255.0))));
    }
}

Eigen::MatrixXd binarize(const Eigen::Ref<const Eigen::MatrixXd>& samples,
                         double threshold) {
    if (!std::isfinite(threshold))
        throw std::invalid_argument("binarize threshold must be finite");
    return samples.unaryExpr(
        [threshold](double x) { return x > threshold ? 1.0 : 0.0; });
}

Dataset binarize(const RealDataset& data, double threshold) {
    Dataset out;
    out.samples = binarize(data.samples, threshold);
    out.labels = data.labels;
    out.name = data.name;
    out.source_digest = data.source_digest;
    return out;
}

namespace {

void fill_bars_pattern(Eigen::Ref<Eigen::MatrixXd> row_out, int n,
                       std::uint32_t mask, bool horizontal) {
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) {
            const int line = horizontal ? r : col;
            row_out(0, r * n + col) = (mask >> line) & 1u ? 1.0 : 0.0;
        }
}

}  // namespace

Dataset bars_and_stripes(int n) {
    if (n < 1) throw std::invalid_argument("bars_and_stripes needs n >= 1");
    const std::uint32_t patterns = 1u << n;
    const long total = 2L * patterns - 2;
    Dataset out;
    out.samples.resize(total, Eigen::Index{n} * n);
    long row = 0;
    for (std::uint32_t mask = 0; mask < patterns; ++mask)
        fill_bars_pattern(out.samples.row(row++), n, mask, /*horizontal=*/true);
    for (std::uint32_t mask = 1; mask + 1 < patterns; ++mask)
        fill_bars_pattern(out.samples.row(row++), n, mask, /*horizontal=*/false);
    out.name = "bars_and_stripes_" + std::to_string(n);
    out.source_digest = sha256_hex(out.name + ":exhaustive");
    return out;
}

Dataset bars_and_stripes(int n, long num_samples, RngStream rng) {
    if (n < 1) throw std::invalid_argument("bars_and_stripes needs n >= 1");
    Dataset out;
    out.samples.resize(num_samples, Eigen::Index{n} * n);
    for (long s = 0; s < num_samples; ++s) {
        const bool horizontal = rng.next_double() < 0.5;
        const auto mask = static_cast<std::uint32_t>(rng.below(1u << n));
        fill_bars_pattern(out.samples.row(s), n, mask, horizontal);
    }
    out.name = "bars_and_stripes_" + std::to_string(n) + "_sampled";
    out.source_digest = sha256_hex(out.name + ":" + std::to_string(num_samples));
    return out;
}

Dataset bars_and_stripes_labeled(int n) {
    if (n < 1) throw std::invalid_argument("bars_and_stripes needs n >= 1");
    const std::uint32_t patterns = 1u << n;
    const long total = 2L * patterns - 4;  // both uniform patterns dropped
    Dataset out;
    out.samples.resize(total, Eigen::Index{n} * n);
    out.labels = std::vector<int>();
    out.labels->reserve(total);
    long row = 0;
    for (std::uint32_t mask = 1; mask + 1 < patterns; ++mask) {
        fill_bars_pattern(out.samples.row(row++), n, mask, /*horizontal=*/true);
        out.labels->push_back(0);
    }
    for (std::uint32_t mask = 1; mask + 1 < patterns; ++mask) {
        fill_bars_pattern(out.samples.row(row++), n, mask, /*horizontal=*/false);
        out.labels->push_back(1);
    }
    out.name = "bars_and_stripes_" + std::to_string(n) + "_labeled";
    out.source_digest = sha256_hex(out.name + ":exhaustive");
    return out;
}

void save_dataset(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open dataset cache for writing: " + path);
    out.write("GDAT", 4);
    const std::uint32_t version = 1;
    out.write(reinterpret_cast<const char*>(&version), 4);
    const std::uint64_t n = static_cast<std::uint64_t>(data.size());
    out.write(reinterpret_cast<const char*>(&n), 8);
    const std::uint32_t features = static_cast<std::uint32_t>(data.features());
    out.write(reinterpret_cast<const char*>(&features), 4);
    const std::uint8_t has_labels = data.labels ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&has_labels), 1);

    const std::uint64_t bits = n * features;
    std::vector<unsigned char> packed((bits + 7) / 8, 0);
    std::uint64_t k = 0;
    for (std::uint64_t row = 0; row < n; ++row)
        for (std::uint32_t col = 0; col < features; ++col, ++k)
            if (data.samples(static_cast<Eigen::Index>(row), col) != 0.0)
                packed[k / 8] |= static_cast<unsigned char>(1u << (k % 8));
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size()));
    if (has_labels)
        for (int v : *data.labels) {
            const auto label = static_cast<std::uint32_t>(v);
            out.write(reinterpret_cast<const char*>(&label), 4);
        }
    if (!out) throw DataError("write failed for dataset cache: " + path);
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset cache: " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "GDAT", 4) != 0)
        throw DataError("bad dataset cache magic in " + path);
    std::uint32_t version;
    if (!in.read(reinterpret_cast<char*>(&version), 4) || version != 1)
        throw DataError("unsupported dataset cache version in " + path);
    std::uint64_t n;
    std::uint32_t features;
    std::uint8_t has_labels;
    if (!in.read(reinterpret_cast<char*>(&n), 8) ||
        !in.read(reinterpret_cast<char*>(&features), 4) ||
        !in.read(reinterpret_cast<char*>(&has_labels), 1))
        throw DataError(path + ": truncated dataset cache header");

    const std::uint64_t bits = n * features;
    const auto packed = read_exact(in, (bits + 7) / 8, path, "packed samples");
    Dataset out;
    out.samples.resize(static_cast<Eigen::Index>(n), features);
    std::uint64_t k = 0;
    for (std::uint64_t row = 0; row < n; ++row)
        for (std::uint32_t col = 0; col < features; ++col, ++k)
            out.samples(static_cast<Eigen::Index>(row), col) =
                (packed[k / 8] >> (k % 8)) & 1u ? 1.0 : 0.0;
    if (has_labels) {
        out.labels = std::vector<int>();
        out.labels->reserve(n);
        for (std::uint64_t row = 0; row < n; ++row) {
            std::uint32_t label;
            if (!in.read(reinterpret_cast<char*>(&label), 4))
                throw DataError(path + ": truncated labels");
            out.labels->push_back(static_cast<int>(label));
        }
    }
    out.name = "gdat";
    out.source_digest = sha256_file(path);
    return out;
}

Dataset stratified_subset(const Dataset& data, long n, std::uint64_t seed) {
    if (n >= data.size()) return data;
    RngStream rng(seed, 0x5B5E7);
    std::vector<long> chosen;
    chosen.reserve(static_cast<std::size_t>(n));

    auto pick_from = [&](std::vector<long>& pool, long quota, RngStream r) {
        for (long takes = 0; takes < quota && !pool.empty(); ++takes) {
            const auto at = static_cast<std::size_t>(r.below(pool.size()));
            chosen.push_back(pool[at]);
            pool[at] = pool.back();
            pool.pop_back();
        }
    };

    if (data.labels) {
        const int classes = data.num_classes();
        std::vector<std::vector<long>> by_class(static_cast<std::size_t>(classes));
        for (long i = 0; i < data.size(); ++i)
            by_class[static_cast<std::size_t>((*data.labels)[i])].push_back(i);
        // Proportional quotas, remainders to the largest classes first.
        std::vector<long> quota(by_class.size());
        long assigned = 0;
        for (std::size_t cls = 0; cls < by_class.size(); ++cls) {
            quota[cls] = static_cast<long>(by_class[cls].size()) * n / data.size();
            assigned += quota[cls];
        }
        std::vector<std::size_t> order(by_class.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return by_class[a].size() > by_class[b].size();
        });
        for (std::size_t k = 0; assigned < n; ++k) {
            const auto cls = order[k % order.size()];
            if (quota[cls] < static_cast<long>(by_class[cls].size())) {
                ++quota[cls];
                ++assigned;
            }
        }
        for (std::size_t cls = 0; cls < by_class.size(); ++cls)
            pick_from(by_class[cls], quota[cls], rng.substream(cls));
    } else {
        std::vector<long> pool(static_cast<std::size_t>(data.size()));
        std::iota(pool.begin(), pool.end(), 0);
        pick_from(pool, n, rng);
    }

    std::sort(chosen.begin(), chosen.end());
    Dataset out;
    out.samples.resize(static_cast<Eigen::Index>(chosen.size()), data.features());
    if (data.labels) out.labels = std::vector<int>();
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        out.samples.row(static_cast<Eigen::Index>(k)) = data.samples.row(chosen[k]);
        if (data.labels) out.labels->push_back((*data.labels)[chosen[k]]);
    }
    out.name = data.name + "_subset" + std::to_string(n);
    out.source_digest = data.source_digest + ":subset:" + std::to_string(n) + ":" +
                        std::to_string(seed);
    return out;
}

}  // namespace grbm
