// Copyright 2026 The Many-Hypercube Authors
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

#include "mhc/tableau.h"

#include <bit>
#include <stdexcept>
#include <utility>

namespace mhc {

namespace {

// Multiplies (x1,z1,s1) into (x2,z2,s2) in place, returning the new sign.
bool multiply_into(
    uint64_t *x2, uint64_t *z2, bool s2, const uint64_t *x1, const uint64_t *z1, bool s1, size_t words) {
    int phase = 2 * s1 + 2 * s2;
    for (size_t k = 0; k < words; k++) {
        uint64_t a = x1[k], b = z1[k], c = x2[k], d = z2[k];
        uint64_t pos = (a & ~b & c & d) | (~a & b & c & ~d) | (a & b & ~c & d);
        uint64_t neg = (a & ~b & ~c & d) | (~a & b & c & d) | (a & b & c & ~d);
        phase += std::popcount(pos) - std::popcount(neg);
        x2[k] ^= a;
        z2[k] ^= b;
    }
    return ((phase % 4) + 4) % 4 == 2;
}

}  // namespace

Tableau::Tableau(size_t num_qubits)
    : n_(num_qubits),
      w_((num_qubits + 63) / 64),
      xs_((2 * num_qubits + 1) * w_, 0),
      zs_((2 * num_qubits + 1) * w_, 0),
      sign_(2 * num_qubits + 1, 0) {
    for (size_t q = 0; q < n_; q++) {
        xs_[q * w_ + (q >> 6)] |= uint64_t{1} << (q & 63);
        zs_[(n_ + q) * w_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    }
}

void Tableau::h(size_t q) {
    size_t k = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &x = xs_[r * w_ + k];
        uint64_t &z = zs_[r * w_ + k];
        uint64_t xb = x & m, zb = z & m;
        if (xb && zb) {
            sign_[r] ^= 1;
        }
        x = (x & ~m) | zb;
        z = (z & ~m) | xb;
    }
}

void Tableau::s(size_t q) {
    size_t k = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t x = xs_[r * w_ + k] & m;
        uint64_t &z = zs_[r * w_ + k];
        if (x && (z & m)) {
            sign_[r] ^= 1;
        }
        z ^= x;
    }
}

void Tableau::x(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        sign_[r] ^= zbit(r, q);
    }
}

void Tableau::y(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        sign_[r] ^= xbit(r, q) ^ zbit(r, q);
    }
}

void Tableau::z(size_t q) {
    for (size_t r = 0; r < 2 * n_; r++) {
        sign_[r] ^= xbit(r, q);
    }
}

void Tableau::cnot(size_t c, size_t t) {
    if (c == t) {
        throw std::invalid_argument("CNOT control equals target");
    }
    size_t kc = c >> 6, kt = t >> 6;
    unsigned bc = c & 63, bt = t & 63;
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t *x = &xs_[r * w_];
        uint64_t *z = &zs_[r * w_];
        bool xc = (x[kc] >> bc) & 1, zc = (z[kc] >> bc) & 1;
        bool xt = (x[kt] >> bt) & 1, zt = (z[kt] >> bt) & 1;
        if (xc && zt && (xt == zc)) {
            sign_[r] ^= 1;
        }
        if (xc) {
            x[kt] ^= uint64_t{1} << bt;
        }
        if (zt) {
            z[kc] ^= uint64_t{1} << bc;
        }
    }
}

void Tableau::swap(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (size_t r = 0; r < 2 * n_; r++) {
        for (auto *v : {&xs_, &zs_}) {
            uint64_t *row = &(*v)[r * w_];
            bool ba = (row[a >> 6] >> (a & 63)) & 1;
            bool bb = (row[b >> 6] >> (b & 63)) & 1;
            if (ba != bb) {
                row[a >> 6] ^= uint64_t{1} << (a & 63);
                row[b >> 6] ^= uint64_t{1} << (b & 63);
            }
        }
    }
}

void Tableau::apply_pauli(const PauliOperator &p) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size does not match the tableau");
    }
    // Conjugation flips the sign of every row anticommuting with p.
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t acc = 0;
        for (size_t k = 0; k < w_; k++) {
            acc ^= (xs_[r * w_ + k] & p.z.data()[k]) ^ (zs_[r * w_ + k] & p.x.data()[k]);
        }
        sign_[r] ^= std::popcount(acc) & 1;
    }
}

void Tableau::rowmul(size_t h, size_t i) {
    sign_[h] = multiply_into(&xs_[h * w_], &zs_[h * w_], sign_[h], &xs_[i * w_], &zs_[i * w_], sign_[i], w_);
}

void Tableau::rowcopy(size_t dst, size_t src) {
    for (size_t k = 0; k < w_; k++) {
        xs_[dst * w_ + k] = xs_[src * w_ + k];
        zs_[dst * w_ + k] = zs_[src * w_ + k];
    }
    sign_[dst] = sign_[src];
}

void Tableau::rowclear(size_t r) {
    for (size_t k = 0; k < w_; k++) {
        xs_[r * w_ + k] = 0;
        zs_[r * w_ + k] = 0;
    }
    sign_[r] = 0;
}

bool Tableau::is_deterministic_z(size_t q) const {
    for (size_t r = n_; r < 2 * n_; r++) {
        if (xbit(r, q)) {
            return false;
        }
    }
    return true;
}

bool Tableau::measure_z(size_t q, Rng &rng) {
    size_t p = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (xbit(r, q)) {
            p = r;
            break;
        }
    }
    if (p < 2 * n_) {
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != p && xbit(r, q)) {
                rowmul(r, p);
            }
        }
        rowcopy(p - n_, p);
        rowclear(p);
        zs_[p * w_ + (q >> 6)] |= uint64_t{1} << (q & 63);
        bool outcome = rng.coin();
        sign_[p] = outcome;
        return outcome;
    }
    size_t scratch = 2 * n_;
    rowclear(scratch);
    for (size_t i = 0; i < n_; i++) {
        if (xbit(i, q)) {
            rowmul(scratch, i + n_);
        }
    }
    return sign_[scratch];
}

void Tableau::reset_z(size_t q, Rng &rng) {
    if (measure_z(q, rng)) {
        x(q);
    }
}

int Tableau::expectation(const PauliOperator &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size does not match the tableau");
    }
    auto anticommutes = [&](size_t r) {
        uint64_t acc = 0;
        for (size_t k = 0; k < w_; k++) {
            acc ^= (xs_[r * w_ + k] & p.z.data()[k]) ^ (zs_[r * w_ + k] & p.x.data()[k]);
        }
        return (std::popcount(acc) & 1) != 0;
    };
    for (size_t r = n_; r < 2 * n_; r++) {
        if (anticommutes(r)) {
            return 0;
        }
    }
    std::vector<uint64_t> x(w_, 0), z(w_, 0);
    bool sign = false;
    for (size_t i = 0; i < n_; i++) {
        if (anticommutes(i)) {
            sign = multiply_into(x.data(), z.data(), sign, &xs_[(i + n_) * w_], &zs_[(i + n_) * w_], sign_[i + n_], w_);
        }
    }
    for (size_t k = 0; k < w_; k++) {
        if (x[k] != p.x.data()[k] || z[k] != p.z.data()[k]) {
            return 0;
        }
    }
    return sign ? -1 : 1;
}

bool Tableau::check_invariants() const {
    auto commute = [&](size_t a, size_t b) {
        uint64_t acc = 0;
        for (size_t k = 0; k < w_; k++) {
            acc ^= (xs_[a * w_ + k] & zs_[b * w_ + k]) ^ (zs_[a * w_ + k] & xs_[b * w_ + k]);
        }
        return (std::popcount(acc) & 1) == 0;
    };
    for (size_t i = 0; i < n_; i++) {
        for (size_t j = 0; j < n_; j++) {
            if (!commute(n_ + i, n_ + j)) {
                return false;
            }
            if (i != j && !commute(i, j)) {
                return false;
            }
            if (commute(i, n_ + j) != (i != j)) {
                return false;
            }
        }
    }
    return true;
}

PauliOperator Tableau::row(size_t r) const {
    PauliOperator p(n_);
    for (size_t q = 0; q < n_; q++) {
        p.x.set(q, xbit(r, q));
        p.z.set(q, zbit(r, q));
    }
    return p;
}

}  // namespace mhc
