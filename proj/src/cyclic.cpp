#include "augcat/cyclic.hpp"

#include "augcat/errors.hpp"

namespace augcat::cyclic {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int extend(const Code& f, int n, int i) {
  const int len = f.size();
  const int q = floor_div(i, len);
  return f[i - q * len] + q * (n + 1);
}

Code normalize(Code f, int n) {
  if (f.empty()) return f;
  const int shift = floor_div(f[0], n + 1) * (n + 1);
  if (shift != 0)
    for (int i = 0; i < f.size(); ++i) f.set(i, f[i] - shift);
  return f;
}

Code compose(const Code& g, const Code& f, int /*n*/, int p) {
  Code out;
  out.resize(f.size());
  for (int i = 0; i < f.size(); ++i) out.set(i, extend(g, p, f[i]));
  return normalize(out, p);
}

Code identity(int n) {
  Code c;
  for (int i = 0; i <= n; ++i) c.push_back(i);
  return c;
}

Code tau(int n) {
  Code c;
  for (int i = 0; i <= n; ++i) c.push_back(i - 1);
  return normalize(c, n);
}

bool injective(const Code& f, int n) {
  for (int i = 0; i + 1 < f.size(); ++i)
    if (f[i] == f[i + 1]) return false;
  return f[f.size() - 1] < f[0] + n + 1;
}

bool surjective(const Code& f, int n) {
  for (int i = 0; i + 1 < f.size(); ++i)
    if (f[i + 1] - f[i] > 1) return false;
  return f[0] + n + 1 - f[f.size() - 1] <= 1;
}

std::pair<int, Code> split_rotation(const Code& f, int m, int n) {
  for (int k = 0; k <= m; ++k) {
    Code phi;
    phi.resize(m + 1);
    for (int j = 0; j <= m; ++j) phi.set(j, extend(f, n, j + k));
    phi = normalize(phi, n);
    if (phi[m] <= n) return {k, phi};
  }
  throw StructuralError("cyclic code has no rotation splitting");
}

Code join_rotation(int k, const Code& phi, int m, int n) {
  Code out;
  out.resize(m + 1);
  for (int i = 0; i <= m; ++i) out.set(i, extend(phi, n, i - k));
  return normalize(out, n);
}

}  // namespace augcat::cyclic
