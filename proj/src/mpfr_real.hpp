#pragma once

// Minimal RAII holder for mpfr_t. Internal to the library.

#include <utility>

#include <mpfr.h>

namespace maxcurves::detail {

class MpfrReal {
 public:
  explicit MpfrReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrReal() {
    if (live_) mpfr_clear(v_);
  }
  MpfrReal(const MpfrReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpfrReal& operator=(const MpfrReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrReal(MpfrReal&& other) noexcept {
    // mpfr_t is a one-element array; swapping the struct moves the limbs.
    *v_ = *other.v_;
    other.live_ = false;
  }
  MpfrReal& operator=(MpfrReal&& other) noexcept {
    std::swap(*v_, *other.v_);
    return *this;
  }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

 private:
  mpfr_t v_;
  bool live_ = true;
};

}  // namespace maxcurves::detail
