//! The category of torsion-model objects: objects in adjoint form, Hom,
//! products, fixed points and the corepresenting objects `B_K(V, n)`.

mod eval;
mod functors;
mod hom;
mod object;

pub use eval::{eval_via_colim, EvalReport, EvalStage};
pub use functors::{b_component, b_object, b_transition, build, c_k_cokernel, nz, phi_fixed, presented_of_atom, product, sphere_rank1};
pub use hom::{hom_adjoint_dim, hom_at, projections, solve_window, AtHom, AtMorphism, TopMap};
pub use object::{
    ground, mk_a, mk_a_presented, mk_f, mk_f_presented, presented_sum, ring_vars, vector_space, AtObject, Bottom,
    Desc, FormalPart, Invariants, Isotropy, Leg,
};

#[cfg(test)]
mod tests;
