//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/tensor/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lcjt/error.h"

namespace lcjt {
namespace {
static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = { 'L', 'C', 'J', 'T', 'C', 'K', 'P', 'T' };
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
  template <class T>
  void pod(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void str(const std::string &s) {
    pod<std::uint64_t>(s.size());
    out_ += s;
  }
  void mat(const Mat &m) {
    pod<std::uint64_t>(static_cast<std::uint64_t>(m.rows()));
    pod<std::uint64_t>(static_cast<std::uint64_t>(m.cols()));
    out_.append(reinterpret_cast<const char *>(m.data()),
                sizeof(double) * static_cast<std::size_t>(m.size()));
  }
  std::string take() { return std::move(out_); }
  void raw(const char *p, std::size_t n) { out_.append(p, n); }

private:
  std::string out_;
};

class Reader {
public:
  explicit Reader(const std::string &in): in_(in) { }

  void need(std::size_t n) {
    if (pos_ + n > in_.size())
      throw ParseError("checkpoint: truncated", static_cast<int>(pos_));
  }
  template <class T>
  T pod() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string str() {
    auto n = pod<std::uint64_t>();
    need(n);
    std::string s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  Mat mat() {
    auto r = pod<std::uint64_t>();
    auto c = pod<std::uint64_t>();
    if (r > (1U << 30) || c > (1U << 30))
      throw ParseError("checkpoint: implausible tensor shape",
                       static_cast<int>(pos_));
    Mat m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    const std::size_t bytes = sizeof(double) * r * c;
    need(bytes);
    std::memcpy(m.data(), in_.data() + pos_, bytes);
    pos_ += bytes;
    return m;
  }
  bool done() const { return pos_ == in_.size(); }

private:
  const std::string &in_;
  std::size_t pos_ = 0;
};

bool same_bits(const Mat &a, const Mat &b) {
  return a.rows() == b.rows() && a.cols() == b.cols()
         && std::memcmp(a.data(), b.data(),
                        sizeof(double) * static_cast<std::size_t>(a.size()))
                == 0;
}
}  // namespace

bool Checkpoint::operator==(const Checkpoint &o) const {
  if (tensors.size() != o.tensors.size() || adam_t != o.adam_t
      || epoch != o.epoch || beta_step != o.beta_step
      || std::bit_cast<std::uint64_t>(beta) != std::bit_cast<std::uint64_t>(o.beta)
      || rng_states != o.rng_states || metadata != o.metadata
      || adam_moments.size() != o.adam_moments.size())
    return false;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (tensors[i].first != o.tensors[i].first
        || !same_bits(tensors[i].second, o.tensors[i].second))
      return false;
  }
  auto it = o.adam_moments.begin();
  for (const auto &[name, mo]: adam_moments) {
    if (name != it->first || !same_bits(mo.m, it->second.m)
        || !same_bits(mo.v, it->second.v))
      return false;
    ++it;
  }
  return true;
}

std::string serialize_checkpoint(const Checkpoint &c) {
  Writer w;
  w.raw(kMagic, sizeof(kMagic));
  w.pod<std::uint32_t>(kVersion);
  w.pod<std::int64_t>(c.epoch);
  w.pod<std::int64_t>(c.beta_step);
  w.pod<double>(c.beta);
  w.pod<std::int64_t>(c.adam_t);
  w.pod<std::uint64_t>(c.tensors.size());
  for (const auto &[name, m]: c.tensors) {
    w.str(name);
    w.mat(m);
  }
  w.pod<std::uint64_t>(c.adam_moments.size());
  for (const auto &[name, mo]: c.adam_moments) {
    w.str(name);
    w.mat(mo.m);
    w.mat(mo.v);
  }
  w.pod<std::uint64_t>(c.rng_states.size());
  for (const auto &[k, v]: c.rng_states) {
    w.str(k);
    w.str(v);
  }
  w.pod<std::uint64_t>(c.metadata.size());
  for (const auto &[k, v]: c.metadata) {
    w.str(k);
    w.str(v);
  }
  return w.take();
}

Checkpoint deserialize_checkpoint(const std::string &bytes) {
  if (bytes.size() < sizeof(kMagic)
      || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    throw ParseError("checkpoint: bad magic");
  std::string body = bytes.substr(sizeof(kMagic));
  Reader r(body);
  auto version = r.pod<std::uint32_t>();
  if (version != kVersion)
    throw ParseError("checkpoint: unsupported version "
                     + std::to_string(version));
  Checkpoint c;
  c.epoch = static_cast<int>(r.pod<std::int64_t>());
  c.beta_step = r.pod<std::int64_t>();
  c.beta = r.pod<double>();
  c.adam_t = r.pod<std::int64_t>();
  auto n = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string name = r.str();
    c.tensors.emplace_back(std::move(name), r.mat());
  }
  n = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string name = r.str();
    Adam::Moments mo;
    mo.m = r.mat();
    mo.v = r.mat();
    c.adam_moments.emplace(std::move(name), std::move(mo));
  }
  n = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string k = r.str();
    c.rng_states.emplace(std::move(k), r.str());
  }
  n = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string k = r.str();
    c.metadata.emplace(std::move(k), r.str());
  }
  if (!r.done())
    throw ParseError("checkpoint: trailing bytes");
  return c;
}

void save_checkpoint(const std::string &path, const Checkpoint &ckpt) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("cannot write checkpoint " + tmp);
    std::string bytes = serialize_checkpoint(ckpt);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw Error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot move checkpoint into place: " + path);
}

Checkpoint load_checkpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read checkpoint " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str());
}

}  // namespace lcjt
