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

#ifndef MHC_TABLEAU_H
#define MHC_TABLEAU_H

#include <cstdint>
#include <vector>

#include "mhc/code.h"
#include "mhc/rng.h"

namespace mhc {

/// Stabilizer state of n qubits with destabilizers, bit-packed by row.
/// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers.
class Tableau {
   public:
    /// The all-zero state.
    explicit Tableau(size_t num_qubits);

    size_t num_qubits() const {
        return n_;
    }

    void h(size_t q);
    void s(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cnot(size_t c, size_t t);
    void swap(size_t a, size_t b);
    void apply_pauli(const PauliOperator &p);

    /// Z measurement with collapse; random outcomes come from `rng`.
    bool measure_z(size_t q, Rng &rng);
    bool is_deterministic_z(size_t q) const;
    /// Measure and flip back to |0>.
    void reset_z(size_t q, Rng &rng);

    /// +1 or -1 when +-P is in the stabilizer group, 0 otherwise.
    int expectation(const PauliOperator &p) const;

    /// Stabilizers commute, destabilizer i anticommutes only with stabilizer i.
    bool check_invariants() const;

    /// Row r as a Pauli (sign dropped).
    PauliOperator row(size_t r) const;
    bool row_sign(size_t r) const {
        return sign_[r];
    }

   private:
    bool xbit(size_t r, size_t q) const {
        return (xs_[r * w_ + (q >> 6)] >> (q & 63)) & 1;
    }
    bool zbit(size_t r, size_t q) const {
        return (zs_[r * w_ + (q >> 6)] >> (q & 63)) & 1;
    }
    // Row h <- row h * row i with phase tracking. Row index 2n is scratch.
    void rowmul(size_t h, size_t i);
    void rowcopy(size_t dst, size_t src);
    void rowclear(size_t r);

    size_t n_;
    size_t w_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> sign_;
};

}  // namespace mhc

#endif
