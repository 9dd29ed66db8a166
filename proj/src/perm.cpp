#include "eraser/perm.hpp"

#include <numeric>
#include <string>

#include "eraser/error.hpp"

namespace eraser {

Permutation::Permutation(std::size_t n) : images_(n) {
  std::iota(images_.begin(), images_.end(), std::uint16_t{0});
}

Permutation Permutation::from_images(std::vector<std::uint16_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (auto x : images) {
    if (x >= images.size() || seen[x]) throw Error(Errc::InvalidArgument, "images do not form a permutation");
    seen[x] = true;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<std::uint16_t> zero(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] < 1 || images[i] > static_cast<int>(images.size()))
      throw Error(Errc::InvalidArgument, "image " + std::to_string(images[i]) + " out of range");
    zero[i] = static_cast<std::uint16_t>(images[i] - 1);
  }
  return from_images(std::move(zero));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw Error(Errc::InvalidArgument, "transposition point out of range");
  Permutation p(n);
  std::swap(p.images_[i], p.images_[j]);
  return p;
}

Permutation Permutation::cycle(std::size_t n, std::initializer_list<std::size_t> points) {
  Permutation p(n);
  std::vector<std::size_t> pts(points);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k] >= n) throw Error(Errc::InvalidArgument, "cycle point out of range");
    p.images_[pts[k]] = static_cast<std::uint16_t>(pts[(k + 1) % pts.size()]);
  }
  return from_images(p.images_);
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (size() != rhs.size()) throw Error(Errc::DimensionMismatch, "permutation sizes differ");
  Permutation out(size());
  for (std::size_t i = 0; i < size(); ++i) out.images_[i] = rhs.images_[images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out(size());
  for (std::size_t i = 0; i < size(); ++i) out.images_[images_[i]] = static_cast<std::uint16_t>(i);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(size(), false);
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    r = std::lcm(r, len);
  }
  return r;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Permutation out(size());
  for (; k != 0; k >>= 1, base = base * base)
    if (k & 1u) out = out * base;
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }

}  // namespace eraser
