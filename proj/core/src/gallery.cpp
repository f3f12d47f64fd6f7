#include "snlab/gallery.hpp"

#include <cmath>

namespace snlab {

namespace {

GalleryEntry make_identity_l1() {
  GalleryEntry e;
  e.id = "identity_l1";
  e.op.entry = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  e.op.dom_p = Exponent::one();
  e.op.cod_q = Exponent::one();
  // The identity is not compact; the discarded tail always has norm 1.
  e.op.tail_bound = [](int) { return 1.0; };
  e.op.known_snumbers = [](SNumberKind kind, int) -> std::optional<double> {
    if (kind == SNumberKind::kolmogorov) return 1.0;
    return std::nullopt;
  };
  e.provenance =
      "Kolmogorov numbers of the identity on l1 equal 1 for every k "
      "(Pietsch, Operator Ideals, 11.6.7 and 11.11.3).";
  return e;
}

GalleryEntry make_diag_harmonic() {
  GalleryEntry e;
  e.id = "diag_harmonic";
  e.op.entry = [](int i, int j) { return i == j ? 1.0 / i : 0.0; };
  e.op.dom_p = Exponent::two();
  e.op.cod_q = Exponent::two();
  e.op.tail_bound = [](int n) { return 1.0 / (n + 1); };
  e.op.known_snumbers = [](SNumberKind, int k) -> std::optional<double> {
    return 1.0 / k;
  };
  e.provenance =
      "Diagonal operator on l2 with singular values 1/k; every s-number "
      "scale coincides with the singular values between Hilbert spaces.";
  return e;
}

GalleryEntry make_diag_geometric(const std::string& suffix, Exponent p) {
  GalleryEntry e;
  e.id = "diag_geometric_" + suffix;
  e.op.entry = [](int i, int j) {
    return i == j ? std::pow(2.0, 1.0 - i) : 0.0;
  };
  e.op.dom_p = p;
  e.op.cod_q = p;
  e.op.tail_bound = [](int n) { return std::pow(2.0, -n); };
  const bool hilbert = p.is(2.0);
  e.op.known_snumbers = [hilbert](SNumberKind kind,
                                  int k) -> std::optional<double> {
    if (hilbert || kind == SNumberKind::approximation)
      return std::pow(2.0, 1.0 - k);
    return std::nullopt;
  };
  e.provenance =
      "Diagonal operator with entries 2^(1-k): truncating the diagonal at "
      "k-1 terms realizes a_k = 2^(1-k) on every l^p (the diagonal tail "
      "norm), matched from below by the leading k x k section; "
      "oracle-validated on sections n <= 4 for p in {1, inf}.";
  return e;
}

GalleryEntry make_hilbert_matrix() {
  GalleryEntry e;
  e.id = "hilbert_matrix";
  e.op.entry = [](int i, int j) { return 1.0 / (i + j - 1.0); };
  e.op.dom_p = Exponent::two();
  e.op.cod_q = Exponent::two();
  // No certified tail bound and no analytic s-numbers: reports against this
  // operator are always flagged extrapolated.
  e.provenance =
      "Hilbert matrix stress operator; no analytic s-numbers, references "
      "are extrapolated from sections.";
  return e;
}

GalleryEntry make_weighted_shift() {
  GalleryEntry e;
  e.id = "weighted_shift";
  e.op.entry = [](int i, int j) {
    return (i == j + 1) ? 1.0 / j : 0.0;
  };
  e.op.dom_p = Exponent::two();
  e.op.cod_q = Exponent::two();
  e.op.tail_bound = [](int n) { return 1.0 / n; };
  e.op.known_snumbers = [](SNumberKind, int k) -> std::optional<double> {
    return 1.0 / k;
  };
  e.provenance =
      "Weighted shift with weights 1/k on l2: T*T is diagonal, so the "
      "singular values are the weights and sections of size n >= k+1 "
      "reproduce them exactly.";
  return e;
}

}  // namespace

const std::vector<GalleryEntry>& gallery() {
  static const std::vector<GalleryEntry> entries = [] {
    std::vector<GalleryEntry> v;
    v.push_back(make_identity_l1());
    v.push_back(make_diag_harmonic());
    v.push_back(make_diag_geometric("l1", Exponent::one()));
    v.push_back(make_diag_geometric("l43", Exponent(4.0 / 3.0)));
    v.push_back(make_diag_geometric("l2", Exponent::two()));
    v.push_back(make_diag_geometric("l4", Exponent(4.0)));
    v.push_back(make_diag_geometric("linf", Exponent::inf()));
    v.push_back(make_hilbert_matrix());
    v.push_back(make_weighted_shift());
    return v;
  }();
  return entries;
}

const GalleryEntry* gallery_find(const std::string& id) {
  for (const auto& e : gallery())
    if (e.id == id) return &e;
  return nullptr;
}

}  // namespace snlab
