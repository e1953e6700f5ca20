//! Formal nearly holomorphic Fourier expansions over Q(zeta_N)[pi, 1/pi] and
//! the differential operators acting on them.

mod coeff;
mod cyclo;
mod entry;
mod expansion;
mod master;
mod ops;
mod poly;

pub use coeff::{CKey, CoeffPoly};
pub use cyclo::{cyclotomic_poly, CycScalar, Cyclo, CycloTable};
pub use entry::{var_entry, Entry};
pub use expansion::{FourierExpansion, MAX_RANK};
pub use master::{
    apply_lie_element, apply_lie_element_normalized, center_block_form, char_projection, dk_operator, invertible_split,
    killed_by_e_power, omega_op,
};
pub use ops::{
    collapse_slots_rank_one, op_c, op_d, op_dbar, op_drho_e, op_e, op_e_power, scale_pi_i, Twist, ValueRep,
};
pub use poly::{var_count, var_index, var_pair, Frac, MPoly, SymData};
