#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/error.hpp"

namespace eesd::detail {

static_assert(std::endian::native == std::endian::little,
              "index files are written little-endian");

class BinaryWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void u64(std::uint64_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void bytes(std::string_view s) { buf_.append(s); }

  const std::string& data() const { return buf_; }

 private:
  void raw(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  std::string buf_;
};

class BinaryReader {
 public:
  BinaryReader(std::string_view data, std::string what)
      : data_(data), what_(std::move(what)) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() { return pod<std::uint32_t>(); }
  std::uint64_t u64() { return pod<std::uint64_t>(); }
  double f64() { return pod<double>(); }
  std::string str() {
    auto n = u32();
    return std::string(take(n));
  }
  std::string_view take(std::size_t n) {
    if (data_.size() - pos_ < n) {
      throw Error(ErrorCode::data_error, what_ + ": truncated at byte " + std::to_string(pos_));
    }
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool at_end() const { return pos_ == data_.size(); }
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::data_error, what_ + ": " + message);
  }

 private:
  template <typename T>
  T pod() {
    T v;
    std::memcpy(&v, take(sizeof v).data(), sizeof v);
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
  std::string what_;
};

std::string read_file(const std::string& path);
// Writes to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace eesd::detail
