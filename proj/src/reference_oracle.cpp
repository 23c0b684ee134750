#include "nmrparity/reference_oracle.hpp"

#include <stdexcept>

namespace nmrparity {

int brute_parity(const PhaseFunction& f) {
    int product = 1;
    for (std::size_t x = 0; x < f.dim(); ++x) {
        product *= f.f(x);
    }
    return product;
}

long brute_g(const PhaseFunction& f) {
    long g = 0;
    for (std::size_t x = 0; x < f.dim(); ++x) {
        g += f.g(x);
    }
    return g;
}

std::vector<long> brute_pk(const PhaseFunction& f, const UnitNumberTable& table) {
    if (table.n() != f.n()) {
        throw std::invalid_argument("brute_pk: table size mismatch");
    }
    std::vector<long> p(f.n(), 0);
    for (std::size_t k = 1; k <= f.n(); ++k) {
        for (std::size_t s = 0; s < f.dim(); ++s) {
            p[k - 1] += f.g(s) * table(k, s);
        }
    }
    return p;
}

std::vector<long> brute_mk(const MSpec& spec, const UnitNumberTable& table) {
    if (table.n() != spec.n()) {
        throw std::invalid_argument("brute_mk: table size mismatch");
    }
    std::vector<long> m(spec.n(), 0);
    for (std::size_t l : canonical_index_set(spec)) {
        for (std::size_t k = 1; k <= spec.n(); ++k) {
            m[k - 1] += table(k, l);
        }
    }
    return m;
}

std::vector<long> brute_offset_signal(const PhaseFunction& f, const MSpec& spec,
                                      const UnitNumberTable& table) {
    if (table.n() != f.n() || spec.n() != f.n()) {
        throw std::invalid_argument("brute_offset_signal: size mismatch");
    }
    const std::size_t n = f.n();
    std::vector<int> h(f.dim());
    for (std::size_t x = 0; x < f.dim(); ++x) {
        h[x] = f.g(x);
    }
    for (std::size_t l : canonical_index_set(spec)) {
        h[l] -= 1;
    }
    // sin(pi/2 d) for d = 0, 1, 2, 3 (mod 4).
    static constexpr int kQuarterSine[4] = {0, 1, 0, -1};

    std::vector<long> out(n, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t r = 0; r < f.dim(); ++r) {
            if (table(k, r) != 1) {
                continue;
            }
            const std::size_t c = r ^ spin_mask(n, k);
            const int d = ((h[r] - h[c]) % 4 + 4) % 4;
            out[k - 1] += kQuarterSine[d];
        }
    }
    return out;
}

ReferenceReport reference_report(const PhaseFunction& f, const std::optional<MSpec>& spec) {
    const UnitNumberTable table(f.n());
    ReferenceReport report;
    report.parity = brute_parity(f);
    report.G = brute_g(f);
    report.P = brute_pk(f, table);
    if (spec) {
        report.M = brute_mk(*spec, table);
    }
    return report;
}

}  // namespace nmrparity
