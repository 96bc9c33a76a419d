// Copyright 2026 The ifm-resonator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <immintrin.h>

#include <array>
#include <cstddef>

#include "ifm/simd/kernels.hpp"

// Four doubles per lane group. exp and sin follow the Cephes double-precision
// reductions and polynomials, so results agree with libm to a few ulp.

namespace ifm::simd::avx2 {

namespace {

inline __m256d poly(__m256d x, double c0, double c1, double c2) {
    __m256d r = _mm256_set1_pd(c0);
    r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c1));
    return _mm256_fmadd_pd(r, x, _mm256_set1_pd(c2));
}

inline __m256d poly(__m256d x, double c0, double c1, double c2, double c3) {
    return _mm256_fmadd_pd(poly(x, c0, c1, c2), x, _mm256_set1_pd(c3));
}

inline __m256d poly(__m256d x, double c0, double c1, double c2, double c3, double c4, double c5) {
    __m256d r = poly(x, c0, c1, c2, c3);
    r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c4));
    return _mm256_fmadd_pd(r, x, _mm256_set1_pd(c5));
}

// exp(v) for v <= 0. Results below ~1e-308 flush to zero.
inline __m256d exp_nonpositive(__m256d v) {
    const __m256d lower = _mm256_set1_pd(-708.0);
    const __m256d underflow = _mm256_cmp_pd(v, lower, _CMP_LT_OQ);
    v = _mm256_max_pd(v, lower);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(v, _mm256_set1_pd(1.4426950408889634073599)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), v);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

    const __m256d rr = _mm256_mul_pd(r, r);
    const __m256d px =
        _mm256_mul_pd(r, poly(rr, 1.26177193074810590878E-4, 3.02994407707441961300E-2, 9.99999999999999999910E-1));
    const __m256d qx = poly(rr, 3.00198505138664455042E-6, 2.52448340349684104192E-3, 2.27265548208155028766E-1,
                            2.00000000000000000009E0);
    const __m256d frac = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    const __m256d mant = _mm256_fmadd_pd(_mm256_set1_pd(2.0), frac, _mm256_set1_pd(1.0));

    const __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i bits = _mm256_cvtepi32_epi64(n32);
    bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
    bits = _mm256_slli_epi64(bits, 52);
    const __m256d scaled = _mm256_mul_pd(mant, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, scaled);
}

// sin(t)^2. The sign of sin is irrelevant here, which drops the sign bookkeeping.
inline __m256d sin_squared(__m256d t) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    t = _mm256_and_pd(t, abs_mask);

    __m256d y = _mm256_floor_pd(_mm256_mul_pd(t, _mm256_set1_pd(1.27323954473516268615)));
    // Round the octant index up to even.
    const __m256d half_y = _mm256_mul_pd(y, _mm256_set1_pd(0.5));
    const __m256d odd = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(half_y)));
    y = _mm256_add_pd(y, odd);

    // y mod 4 is 0 (sine polynomial) or 2 (cosine polynomial).
    const __m256d quarter = _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.25)));
    const __m256d octant = _mm256_fnmadd_pd(_mm256_set1_pd(4.0), quarter, y);
    const __m256d use_cos = _mm256_cmp_pd(octant, _mm256_set1_pd(1.0), _CMP_GT_OQ);

    __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156E-1), t);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668E-8), z);
    z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645E-15), z);
    const __m256d zz = _mm256_mul_pd(z, z);

    const __m256d sin_poly = poly(zz, 1.58962301576546568060E-10, -2.50507477628578072866E-8,
                                  2.75573136213857245213E-6, -1.98412698295895385996E-4, 8.33333333332211858878E-3,
                                  -1.66666666666666307295E-1);
    const __m256d sin_val = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), sin_poly, z);

    const __m256d cos_poly = poly(zz, -1.13585365213876817300E-11, 2.08757008419747316778E-9,
                                  -2.75573141792967388112E-7, 2.48015872888517045348E-5, -1.38888888888730564116E-3,
                                  4.16666666666665929218E-2);
    const __m256d cos_head = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0));
    const __m256d cos_val = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), cos_poly, cos_head);

    const __m256d s = _mm256_blendv_pd(sin_val, cos_val, use_cos);
    return _mm256_mul_pd(s, s);
}

inline __m256d gaussian_airy4(__m256d x, __m256d half_scale, __m256d base, __m256d four_c) {
    const __m256d weight = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(x, x)));
    const __m256d s2 = sin_squared(_mm256_mul_pd(half_scale, x));
    return _mm256_div_pd(weight, _mm256_fmadd_pd(four_c, s2, base));
}

}  // namespace

void gaussian_airy(std::span<const double> x, double phase_scale, double loop_gain, std::span<double> out) {
    const __m256d half_scale = _mm256_set1_pd(0.5 * phase_scale);
    const double detune = 1.0 - loop_gain;
    const __m256d base = _mm256_set1_pd(detune * detune);
    const __m256d four_c = _mm256_set1_pd(4.0 * loop_gain);

    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out.data() + i, gaussian_airy4(_mm256_loadu_pd(x.data() + i), half_scale, base, four_c));
    }
    if (i < n) {
        // Pad the tail so every element goes through the same vector path.
        alignas(32) std::array<double, 4> in{};
        alignas(32) std::array<double, 4> res{};
        for (std::size_t k = 0; i + k < n; ++k) {
            in[k] = x[i + k];
        }
        _mm256_store_pd(res.data(), gaussian_airy4(_mm256_load_pd(in.data()), half_scale, base, four_c));
        for (std::size_t k = 0; i + k < n; ++k) {
            out[i + k] = res[k];
        }
    }
}

}  // namespace ifm::simd::avx2
