//==============================================================================
// energy.hpp
// The monitored energy functionals
//   Y = ||u||^2 + ||grad u||^2 + ||v||^2 + ||grad v||^2 + ||grad u_x||^2
//       + ||grad v_x||^2 + ||T||^2 + ||grad T||^2 + ||grad T_x||^2   (+1 offset)
//   F = ||u_z||^2 + ||v_z||^2 + ||grad u_z||^2 + ||grad v_z||^2
//       + ||grad u_xz||^2 + ||grad v_xz||^2
//   G = ||w||^2 + ||grad w||^2 + ||grad w_x||^2
//   K = ||grad T||^2 + ||lap T||^2 + ||lap T_x||^2
// with every component norm computed by Parseval and w reconstructed from u.
//==============================================================================
#pragma once

#include "pga/fields.hpp"

namespace pga {

struct EnergyReport {
    // squared L2 (semi)norms
    double u2 = 0, v2 = 0, T2 = 0, w2 = 0;
    double ux2 = 0, uz2 = 0, vx2 = 0, vz2 = 0, Tx2 = 0, Tz2 = 0, wx2 = 0, wz2 = 0;
    double uxx2 = 0;
    double grad_u2 = 0, grad_v2 = 0, grad_T2 = 0, grad_w2 = 0;
    double grad_ux2 = 0, grad_vx2 = 0, grad_Tx2 = 0, grad_wx2 = 0;
    double grad_uz2 = 0, grad_vz2 = 0, grad_uxz2 = 0, grad_vxz2 = 0;
    double lapT2 = 0, lapTx2 = 0;
    double cross_Tw = 0;  // <T, w>, the temperature work against w

    double y_offset_free() const {
        return u2 + grad_u2 + v2 + grad_v2 + grad_ux2 + grad_vx2 + T2 + grad_T2 + grad_Tx2;
    }
    double y() const { return 1.0 + y_offset_free(); }
    double f() const { return uz2 + vz2 + grad_uz2 + grad_vz2 + grad_uxz2 + grad_vxz2; }
    double g() const { return w2 + grad_w2 + grad_wx2; }
    double k() const { return grad_T2 + lapT2 + lapTx2; }

    // the velocity / temperature splits used by the small-data argument
    double small_data_velocity() const {
        return u2 + grad_u2 + v2 + grad_v2 + grad_ux2 + grad_vx2;
    }
    double small_data_temperature() const { return k(); }

    double norm_u() const { return std::sqrt(u2); }
    double norm_v() const { return std::sqrt(v2); }
    double norm_T() const { return std::sqrt(T2); }
    double norm_w() const { return std::sqrt(w2); }
};

EnergyReport energy_functionals(const State& state);

}  // namespace pga
