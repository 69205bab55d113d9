#pragma once

#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

namespace va {

// 64-byte aligned allocator.  Buffers handed to the linear-algebra kernels
// must always carry the same alignment, otherwise vectorized reductions can
// pick different instruction paths (and thus different summation orders)
// depending on heap history, breaking bitwise reproducibility.
template <class T, size_t Align = 64>
struct AlignedAlloc {
  using value_type = T;

  AlignedAlloc() = default;
  template <class U>
  AlignedAlloc(const AlignedAlloc<U, Align>&) {}

  T* allocate(size_t n) {
    size_t bytes = ((n * sizeof(T) + Align - 1) / Align) * Align;
    void* p = std::aligned_alloc(Align, bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, size_t) { std::free(p); }

  template <class U>
  struct rebind {
    using other = AlignedAlloc<U, Align>;
  };
  bool operator==(const AlignedAlloc&) const { return true; }
  bool operator!=(const AlignedAlloc&) const { return false; }
};

template <class T>
using AVec = std::vector<T, AlignedAlloc<T>>;

// Dense CHW tensor.
template <class T>
struct Tensor3 {
  int c = 0;
  int h = 0;
  int w = 0;
  AVec<T> v;

  Tensor3() = default;
  Tensor3(int c_, int h_, int w_) : c(c_), h(h_), w(w_), v(static_cast<size_t>(c_) * h_ * w_, T(0)) {}

  size_t size() const { return v.size(); }
  size_t plane() const { return static_cast<size_t>(h) * w; }
  T& at(int ci, int y, int x) { return v[(static_cast<size_t>(ci) * h + y) * w + x]; }
  T at(int ci, int y, int x) const { return v[(static_cast<size_t>(ci) * h + y) * w + x]; }
  void zero() { std::fill(v.begin(), v.end(), T(0)); }
  bool same_shape(const Tensor3& o) const { return c == o.c && h == o.h && w == o.w; }
};

}  // namespace va
