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

#ifndef MHC_NOISE_H
#define MHC_NOISE_H

#include <stdexcept>
#include <string>

#include "mhc/circuit.h"

namespace mhc {

/// Probabilities applied at the noise sites of a circuit. Sites are placed
/// by the circuit builders; this only says how strongly each kind fires.
struct NoiseModel {
    double p_circ = 0.0;
    bool apply_prep_flip = true;
    bool apply_meas_flip = true;
    bool apply_cnot_depolarizing = true;
    /// Code-capacity bit-flip probability for `NOISE flip` sites.
    double p_flip = 0.0;

    static NoiseModel none() {
        return {};
    }
    static NoiseModel circuit_level(double p) {
        NoiseModel m;
        m.p_circ = p;
        return m;
    }
    static NoiseModel bit_flip(double p) {
        NoiseModel m;
        m.p_flip = p;
        return m;
    }

    double rate(NoiseKind kind) const {
        switch (kind) {
            case NoiseKind::Prep:
                return apply_prep_flip ? p_circ : 0.0;
            case NoiseKind::Meas:
                return apply_meas_flip ? p_circ : 0.0;
            case NoiseKind::Cnot:
                return apply_cnot_depolarizing ? p_circ : 0.0;
            case NoiseKind::Flip:
                return p_flip;
        }
        return 0.0;
    }

    void validate() const {
        if (!(p_circ >= 0.0 && p_circ <= 1.0) || !(p_flip >= 0.0 && p_flip <= 1.0)) {
            throw std::invalid_argument("noise probabilities must be in [0,1]");
        }
    }
};

/// The 15 nontrivial two-qubit Paulis in a fixed order; index i in 1..15
/// encodes bits (x_a, z_a, x_b, z_b) = (i&1, i>>1&1, i>>2&1, i>>3&1).
inline void two_qubit_pauli(unsigned index, bool &xa, bool &za, bool &xb, bool &zb) {
    xa = index & 1;
    za = (index >> 1) & 1;
    xb = (index >> 2) & 1;
    zb = (index >> 3) & 1;
}

}  // namespace mhc

#endif
