//! Assembly of the discrete Bloch operator on periodic P1 elements.
//!
//! Five real matrices are built once per mesh: the stiffness A, the
//! directional convection matrices Sx and Sy, and the region-split masses M_a
//! (background) and M_b (inclusion). The operator at a wavevector k and a
//! complex frequency ω is then the pointwise combination
//!
//! ```text
//! T(ω) = A + 2i (k₁ Sx + k₂ Sy) + |k|² (M_a + M_b) − ω² (ε_a M_a + ε_b(ω) M_b)
//! ```
//!
//! with no per-frequency reassembly. Element integrals are exact for linear
//! elements; rows index test functions, columns trial functions.

use faer::sparse::{SparseColMat, SymbolicSparseColMat};
use num_complex::Complex64;

use crate::dielectric::DielectricModel;
use crate::error::Result;
use crate::mesh::{MaterialTag, PeriodicDofMap, UnitCellMesh};
use crate::sparse::CscPattern;

/// The assembled matrices of one mesh, all sharing a single sparsity pattern
/// over periodic DOFs.
#[derive(Debug, Clone)]
pub struct OperatorBundle {
    pub n_dofs: usize,
    pub mesh_h: f64,
    pattern: CscPattern,
    symbolic: SymbolicSparseColMat<usize>,
    a: Vec<f64>,
    sx: Vec<f64>,
    sy: Vec<f64>,
    m_a: Vec<f64>,
    m_b: Vec<f64>,
}

/// Assembles stiffness, convection, and region masses on periodic DOFs.
pub fn assemble(mesh: &UnitCellMesh, dofs: &PeriodicDofMap) -> OperatorBundle {
    let n_tri = mesh.n_triangles();
    let mut coords = Vec::with_capacity(9 * n_tri);
    let mut a_e = Vec::with_capacity(9 * n_tri);
    let mut sx_e = Vec::with_capacity(9 * n_tri);
    let mut sy_e = Vec::with_capacity(9 * n_tri);
    let mut m_e = Vec::with_capacity(9 * n_tri);
    let mut inclusion = Vec::with_capacity(9 * n_tri);

    for (t, tri) in mesh.triangles.iter().enumerate() {
        let p: [[f64; 2]; 3] = [
            mesh.vertices[tri[0]],
            mesh.vertices[tri[1]],
            mesh.vertices[tri[2]],
        ];
        // edge coefficients: grad phi_a = (b_a, c_a) / (2 area)
        let mut b = [0.0; 3];
        let mut c = [0.0; 3];
        for e in 0..3 {
            let (s, u) = ((e + 1) % 3, (e + 2) % 3);
            b[e] = p[s][1] - p[u][1];
            c[e] = p[u][0] - p[s][0];
        }
        let area = 0.5 * (b[0] * c[1] - b[1] * c[0]).abs();
        let is_inclusion = mesh.material[t] == MaterialTag::Inclusion;

        for row in 0..3 {
            for col in 0..3 {
                coords.push((dofs.dof_of_vertex[tri[row]], dofs.dof_of_vertex[tri[col]]));
                a_e.push((b[row] * b[col] + c[row] * c[col]) / (4.0 * area));
                // int phi_col d(phi_row)/dx = (b_row / 2A) * (A/3)
                sx_e.push(b[row] / 6.0);
                sy_e.push(c[row] / 6.0);
                m_e.push(area / 12.0 * if row == col { 2.0 } else { 1.0 });
                inclusion.push(is_inclusion);
            }
        }
    }

    let (pattern, slots) = CscPattern::from_coords(dofs.n_dofs, &coords);
    let nnz = pattern.nnz();
    let (mut a, mut sx, mut sy) = (vec![0.0; nnz], vec![0.0; nnz], vec![0.0; nnz]);
    let (mut m_a, mut m_b) = (vec![0.0; nnz], vec![0.0; nnz]);
    for (e, &slot) in slots.iter().enumerate() {
        a[slot] += a_e[e];
        sx[slot] += sx_e[e];
        sy[slot] += sy_e[e];
        if inclusion[e] {
            m_b[slot] += m_e[e];
        } else {
            m_a[slot] += m_e[e];
        }
    }

    let symbolic = SymbolicSparseColMat::new_checked(
        dofs.n_dofs,
        dofs.n_dofs,
        pattern.col_ptr.clone(),
        None,
        pattern.row_idx.clone(),
    );

    OperatorBundle {
        n_dofs: dofs.n_dofs,
        mesh_h: mesh.h,
        pattern,
        symbolic,
        a,
        sx,
        sy,
        m_a,
        m_b,
    }
}

impl OperatorBundle {
    /// Values of T(ω) on the shared pattern.
    pub fn operator_values(
        &self,
        k: [f64; 2],
        model: &DielectricModel,
        omega: Complex64,
    ) -> Result<Vec<Complex64>> {
        let w2_eps_b = model.omega2_eps_b(omega)?;
        let w2_eps_a = omega * omega * model.eps_background;
        let k_sq = k[0] * k[0] + k[1] * k[1];
        let two_i = Complex64::new(0.0, 2.0);
        Ok((0..self.pattern.nnz())
            .map(|idx| {
                let s = k[0] * self.sx[idx] + k[1] * self.sy[idx];
                let m = self.m_a[idx] + self.m_b[idx];
                Complex64::new(self.a[idx] + k_sq * m, 0.0) + two_i * s
                    - w2_eps_a * self.m_a[idx]
                    - w2_eps_b * self.m_b[idx]
            })
            .collect())
    }

    /// T(ω) as a solver-ready sparse matrix.
    pub fn operator_at(
        &self,
        k: [f64; 2],
        model: &DielectricModel,
        omega: Complex64,
    ) -> Result<SparseColMat<usize, Complex64>> {
        let values = self.operator_values(k, model, omega)?;
        Ok(SparseColMat::new(self.symbolic.clone(), values))
    }

    pub fn pattern(&self) -> &CscPattern {
        &self.pattern
    }

    pub fn stiffness(&self) -> &[f64] {
        &self.a
    }

    pub fn convection_x(&self) -> &[f64] {
        &self.sx
    }

    pub fn convection_y(&self) -> &[f64] {
        &self.sy
    }

    pub fn mass_background(&self) -> &[f64] {
        &self.m_a
    }

    pub fn mass_inclusion(&self) -> &[f64] {
        &self.m_b
    }

    /// Σᵢⱼ (M_a + M_b)ᵢⱼ, which equals the cell area for a partition of unity.
    pub fn total_mass(&self) -> f64 {
        self.m_a.iter().sum::<f64>() + self.m_b.iter().sum::<f64>()
    }

    /// The holomorphic matrix function ω ↦ T(ω) at a fixed wavevector.
    pub fn bloch_operator(&self, k: [f64; 2], model: DielectricModel) -> BlochOperator<'_> {
        BlochOperator {
            bundle: self,
            model,
            k,
        }
    }
}

/// ω ↦ T(ω) for a fixed Bloch wavevector, ready for the eigenvalue search.
#[derive(Debug, Clone, Copy)]
pub struct BlochOperator<'a> {
    bundle: &'a OperatorBundle,
    model: DielectricModel,
    k: [f64; 2],
}

impl crate::nep::HolomorphicMatrixFn for BlochOperator<'_> {
    fn dim(&self) -> usize {
        self.bundle.n_dofs
    }

    fn evaluate(&self, omega: Complex64) -> Result<SparseColMat<usize, Complex64>> {
        self.bundle.operator_at(self.k, &self.model, omega)
    }

    fn disk_is_admissible(&self, center: Complex64, radius: f64) -> bool {
        self.model
            .poles()
            .iter()
            .all(|pole| (pole - center).norm() - radius > self.model.pole_guard)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_periodic_dof_map, generate_structured, refine_uniform};
    use std::f64::consts::PI;

    fn bundle_for(n: usize, r: f64) -> OperatorBundle {
        let mesh = generate_structured(n, r).unwrap();
        let dofs = build_periodic_dof_map(&mesh).unwrap();
        assemble(&mesh, &dofs)
    }

    fn constant_unit() -> DielectricModel {
        DielectricModel::constant(1.0).unwrap()
    }

    fn max_abs_sym_part(pattern: &CscPattern, values: &[f64]) -> f64 {
        let dense = pattern.to_dense(values);
        let n = pattern.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((dense[i][j] + dense[j][i]).abs());
            }
        }
        worst
    }

    #[test]
    fn stiffness_row_sums_vanish() {
        let bundle = bundle_for(2, 0.1);
        assert_eq!(bundle.n_dofs, 4);
        let dense = bundle.pattern().to_dense(bundle.stiffness());
        for row in &dense {
            assert!(row.iter().sum::<f64>().abs() < 1e-13);
        }
    }

    #[test]
    fn total_mass_is_cell_area() {
        for n in [2, 10, 17] {
            let bundle = bundle_for(n, 0.3);
            assert!((bundle.total_mass() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn no_inclusion_mass_without_inclusion_triangles() {
        let bundle = bundle_for(2, 0.1);
        assert!(bundle.mass_inclusion().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn convection_matrices_are_antisymmetric() {
        for n in [2, 10] {
            let bundle = bundle_for(n, 0.378);
            assert!(max_abs_sym_part(bundle.pattern(), bundle.convection_x()) < 1e-12);
            assert!(max_abs_sym_part(bundle.pattern(), bundle.convection_y()) < 1e-12);
        }
    }

    #[test]
    fn operator_reduces_to_stiffness() {
        // k = 0, eps = 1, omega = 0 leaves only A
        let bundle = bundle_for(4, 0.2);
        let values = bundle
            .operator_values([0.0, 0.0], &constant_unit(), Complex64::ZERO)
            .unwrap();
        for (v, &a) in values.iter().zip(bundle.stiffness()) {
            assert_eq!(*v, Complex64::new(a, 0.0));
        }
    }

    #[test]
    fn hermitian_quasi_periodic_form() {
        // H(k) = A + 2iS(k) + |k|^2 M at omega = 0
        let bundle = bundle_for(6, 0.25);
        for k in [[PI, PI], [0.4, -1.3], [-PI, 0.7]] {
            let values = bundle
                .operator_values(k, &constant_unit(), Complex64::ZERO)
                .unwrap();
            let n = bundle.n_dofs;
            let mut dense = vec![vec![Complex64::ZERO; n]; n];
            let pattern = bundle.pattern();
            for col in 0..n {
                for idx in pattern.col_ptr[col]..pattern.col_ptr[col + 1] {
                    dense[pattern.row_idx[idx]][col] = values[idx];
                }
            }
            for i in 0..n {
                for j in 0..n {
                    assert!((dense[i][j] - dense[j][i].conj()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn quadratic_form_on_constants() {
        // e^H H(k) e = |k|^2 for the all-ones DOF vector (total mass 1)
        let bundle = bundle_for(10, 0.378);
        let k = [PI, PI];
        let values = bundle
            .operator_values(k, &constant_unit(), Complex64::ZERO)
            .unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); bundle.n_dofs];
        let mut he = vec![Complex64::ZERO; bundle.n_dofs];
        bundle.pattern().matvec(&values, &ones, &mut he);
        let quad: Complex64 = he.iter().sum();
        assert!((quad - 2.0 * PI * PI).norm() < 1e-10);
    }

    #[test]
    fn galerkin_exactness_on_constants() {
        // A e = 0 and S(k) e = 0 under periodic identification
        let bundle = bundle_for(8, 0.3);
        let ones = vec![Complex64::new(1.0, 0.0); bundle.n_dofs];
        let mut out = vec![Complex64::ZERO; bundle.n_dofs];

        let a_vals: Vec<Complex64> = bundle
            .stiffness()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        bundle.pattern().matvec(&a_vals, &ones, &mut out);
        assert!(out.iter().all(|v| v.norm() < 1e-12));

        let k = [1.1, -0.7];
        let s_vals: Vec<Complex64> = bundle
            .convection_x()
            .iter()
            .zip(bundle.convection_y())
            .map(|(&sx, &sy)| Complex64::new(k[0] * sx + k[1] * sy, 0.0))
            .collect();
        bundle.pattern().matvec(&s_vals, &ones, &mut out);
        assert!(out.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn hermitian_for_real_frequency_and_constant_model() {
        let bundle = bundle_for(5, 0.22);
        let model = DielectricModel::constant(8.9).unwrap();
        let values = bundle
            .operator_values([0.9, 0.4], &model, Complex64::new(1.7, 0.0))
            .unwrap();
        let pattern = bundle.pattern();
        let n = bundle.n_dofs;
        let mut dense = vec![vec![Complex64::ZERO; n]; n];
        for col in 0..n {
            for idx in pattern.col_ptr[col]..pattern.col_ptr[col + 1] {
                dense[pattern.row_idx[idx]][col] = values[idx];
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert!((dense[i][j] - dense[j][i].conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn refinement_preserves_structure() {
        let mesh = generate_structured(6, 0.3).unwrap();
        let fine = refine_uniform(&mesh);
        let dofs = build_periodic_dof_map(&fine).unwrap();
        let bundle = assemble(&fine, &dofs);
        assert_eq!(bundle.n_dofs, 144);
        assert!((bundle.total_mass() - 1.0).abs() < 1e-12);
        let ones = vec![Complex64::new(1.0, 0.0); bundle.n_dofs];
        let mut out = vec![Complex64::ZERO; bundle.n_dofs];
        let a_vals: Vec<Complex64> = bundle
            .stiffness()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        bundle.pattern().matvec(&a_vals, &ones, &mut out);
        assert!(out.iter().all(|v| v.norm() < 1e-12));
    }
}
