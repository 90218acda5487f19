//! Tensor spaces `Λ^i V ⊗ S_j V`, their multidegrees, and the structural maps between
//! them as exact matrices over `F_p`.

pub mod basis;
pub mod maps;
pub mod matrix;

pub use basis::{
    enumerate_basis, enumerate_basis_avoiding, multidegree, tensor_space_dim, BasisTensor, Multidegree,
    TensorSpaceBasis,
};
pub use maps::{
    contraction_between, eta_prime_between, eta_prime_image, eta_prime_matrix, frobenius_power_map, kappa_between,
    kappa_matrix, phi_between, phi_matrix, wedge_right, ContractionSign,
};
pub use matrix::{Echelon, FpSparseMatrix, SparseVec};
