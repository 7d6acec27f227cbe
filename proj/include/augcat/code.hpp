#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace augcat {

// Small integer tuple giving the concrete description of a morphism
// (vertex values, Z-map values, edge map, ...).
class Code {
 public:
  static constexpr int kCapacity = 40;

  Code() = default;
  Code(std::initializer_list<int> values);
  explicit Code(std::span<const int> values);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](int i) const { return v_[i]; }
  void set(int i, int value) { v_[i] = static_cast<std::int16_t>(value); }
  void push_back(int value);
  void resize(int n, int fill = 0);

  std::vector<int> to_vector() const;
  std::string to_string() const;  // "0,1,1"

  bool operator==(const Code& o) const;
  bool operator<(const Code& o) const;
  std::size_t hash() const;

 private:
  std::array<std::int16_t, kCapacity> v_{};
  int size_ = 0;
};

struct CodeHash {
  std::size_t operator()(const Code& c) const { return c.hash(); }
};

}  // namespace augcat
