#include "augcat/code.hpp"

#include "augcat/errors.hpp"

namespace augcat {

Code::Code(std::initializer_list<int> values) {
  for (int x : values) push_back(x);
}

Code::Code(std::span<const int> values) {
  for (int x : values) push_back(x);
}

void Code::push_back(int value) {
  if (size_ >= kCapacity) throw RangeError("morphism code exceeds capacity");
  v_[size_++] = static_cast<std::int16_t>(value);
}

void Code::resize(int n, int fill) {
  if (n > kCapacity) throw RangeError("morphism code exceeds capacity");
  for (int i = size_; i < n; ++i) v_[i] = static_cast<std::int16_t>(fill);
  size_ = n;
}

std::vector<int> Code::to_vector() const { return std::vector<int>(v_.begin(), v_.begin() + size_); }

std::string Code::to_string() const {
  std::string s;
  for (int i = 0; i < size_; ++i) {
    if (i) s += ',';
    s += std::to_string(v_[i]);
  }
  return s;
}

bool Code::operator==(const Code& o) const {
  if (size_ != o.size_) return false;
  for (int i = 0; i < size_; ++i)
    if (v_[i] != o.v_[i]) return false;
  return true;
}

bool Code::operator<(const Code& o) const {
  for (int i = 0; i < size_ && i < o.size_; ++i)
    if (v_[i] != o.v_[i]) return v_[i] < o.v_[i];
  return size_ < o.size_;
}

std::size_t Code::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(size_);
  for (int i = 0; i < size_; ++i) {
    h ^= static_cast<std::uint16_t>(v_[i]);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace augcat
