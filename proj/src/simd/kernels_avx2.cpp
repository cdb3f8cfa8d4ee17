#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "inkrep/simd/kernels.hpp"

namespace inkrep::simd::avx2 {

namespace {

double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

}  // namespace

Bounds bounds(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    std::size_t i = 0;
    Bounds b{xs[0], xs[0], ys[0], ys[0]};
    if (n >= 4) {
        __m256d minx = _mm256_loadu_pd(xs.data());
        __m256d maxx = minx;
        __m256d miny = _mm256_loadu_pd(ys.data());
        __m256d maxy = miny;
        for (i = 4; i + 4 <= n; i += 4) {
            __m256d x = _mm256_loadu_pd(xs.data() + i);
            __m256d y = _mm256_loadu_pd(ys.data() + i);
            minx = _mm256_min_pd(minx, x);
            maxx = _mm256_max_pd(maxx, x);
            miny = _mm256_min_pd(miny, y);
            maxy = _mm256_max_pd(maxy, y);
        }
        b = {hmin(minx), hmax(maxx), hmin(miny), hmax(maxy)};
    }
    for (; i < n; ++i) {
        b.min_x = std::min(b.min_x, xs[i]);
        b.max_x = std::max(b.max_x, xs[i]);
        b.min_y = std::min(b.min_y, ys[i]);
        b.max_y = std::max(b.max_y, ys[i]);
    }
    return b;
}

void normalize(std::span<double> values, double origin, double extent, double target) {
    const std::size_t n = values.size();
    const __m256d o = _mm256_set1_pd(origin);
    const __m256d e = _mm256_set1_pd(extent);
    const __m256d t = _mm256_set1_pd(target);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(values.data() + i);
        v = _mm256_mul_pd(_mm256_div_pd(_mm256_sub_pd(v, o), e), t);
        _mm256_storeu_pd(values.data() + i, v);
    }
    for (; i < n; ++i) values[i] = (values[i] - origin) / extent * target;
}

void round_half_away(std::span<const double> values, std::span<int> out) {
    const std::size_t n = values.size();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(values.data() + i);
        __m256d whole = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
        // v - trunc(v) is exact, so the tie test is exact too.
        __m256d frac = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(v, whole));
        __m256d bump = _mm256_and_pd(_mm256_cmp_pd(frac, half, _CMP_GE_OQ), one);
        bump = _mm256_or_pd(bump, _mm256_and_pd(v, sign_mask));
        __m256d r = _mm256_add_pd(whole, bump);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvttpd_epi32(r));
    }
    for (; i < n; ++i) out[i] = static_cast<int>(std::round(values[i]));
}

}  // namespace inkrep::simd::avx2
