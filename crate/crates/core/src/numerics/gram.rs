//! Gram matrices of generalized hyperbolic tetrahedra.
//!
//! Faces are numbered 0..4 and vertex `v_i` is the vertex opposite face `i`.
//! The six dihedral angles are labelled so that `A, B, C` meet at `v3` and
//! `D, E, F` are the edges opposite `A, B, C`:
//!
//! | edge | faces  | vertices   |
//! |------|--------|------------|
//! | A    | (0, 1) | (v2, v3)   |
//! | B    | (0, 2) | (v1, v3)   |
//! | C    | (1, 2) | (v0, v3)   |
//! | D    | (2, 3) | (v0, v1)   |
//! | E    | (1, 3) | (v0, v2)   |
//! | F    | (0, 3) | (v1, v2)   |
//!
//! so that
//!
//! ```text
//!     |   1    -cos A  -cos B  -cos F |
//! G = | -cos A    1    -cos C  -cos E |
//!     | -cos B  -cos C    1    -cos D |
//!     | -cos F  -cos E  -cos D    1   |
//! ```
//!
//! The principal cofactor `c_ii` decides the type of `v_i`: positive for a
//! finite vertex, zero for an ideal one and negative for a truncated one.

use serde::{Deserialize, Serialize};

/// Cofactors within this distance of zero are treated as ideal vertices.
pub const IDEAL_TOLERANCE: f64 = 1e-9;

/// Dihedral-angle label of a tetrahedron edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Edge {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Edge {
    pub const ALL: [Edge; 6] = [Edge::A, Edge::B, Edge::C, Edge::D, Edge::E, Edge::F];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The two faces meeting along this edge.
    pub fn faces(self) -> (usize, usize) {
        match self {
            Edge::A => (0, 1),
            Edge::B => (0, 2),
            Edge::C => (1, 2),
            Edge::D => (2, 3),
            Edge::E => (1, 3),
            Edge::F => (0, 3),
        }
    }

    /// The endpoints of this edge, as indices of the opposite faces.
    pub fn vertices(self) -> (usize, usize) {
        match self {
            Edge::A => (2, 3),
            Edge::B => (1, 3),
            Edge::C => (0, 3),
            Edge::D => (0, 1),
            Edge::E => (0, 2),
            Edge::F => (1, 2),
        }
    }

    pub fn opposite(self) -> Edge {
        match self {
            Edge::A => Edge::D,
            Edge::B => Edge::E,
            Edge::C => Edge::F,
            Edge::D => Edge::A,
            Edge::E => Edge::B,
            Edge::F => Edge::C,
        }
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    Finite,
    Ideal,
    Truncated,
}

impl VertexType {
    pub fn from_cofactor(c: f64) -> VertexType {
        if c.abs() <= IDEAL_TOLERANCE {
            VertexType::Ideal
        } else if c > 0.0 {
            VertexType::Finite
        } else {
            VertexType::Truncated
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramMatrix(pub [[f64; 4]; 4]);

impl GramMatrix {
    pub fn from_angles(angles: &[f64; 6]) -> GramMatrix {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for e in Edge::ALL {
            let (i, j) = e.faces();
            let v = -angles[e.index()].cos();
            m[i][j] = v;
            m[j][i] = v;
        }
        GramMatrix(m)
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> f64 {
        let mut r = [[0.0; 3]; 3];
        for (ri, i) in (0..4).filter(|&i| i != skip_row).enumerate() {
            for (ci, j) in (0..4).filter(|&j| j != skip_col).enumerate() {
                r[ri][ci] = self.0[i][j];
            }
        }
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    /// Signed cofactor `(-1)^{i+j} M_ij`.
    pub fn cofactor(&self, i: usize, j: usize) -> f64 {
        let sign = if (i + j).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * self.minor(i, j)
    }

    pub fn cofactors(&self) -> [[f64; 4]; 4] {
        let mut c = [[0.0; 4]; 4];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.cofactor(i, j);
            }
        }
        c
    }

    pub fn det(&self) -> f64 {
        (0..4).map(|j| self.0[0][j] * self.cofactor(0, j)).sum()
    }

    pub fn vertex_types(&self) -> [VertexType; 4] {
        let mut out = [VertexType::Finite; 4];
        for (i, t) in out.iter_mut().enumerate() {
            *t = VertexType::from_cofactor(self.cofactor(i, i));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn edge_tables_agree() {
        for e in Edge::ALL {
            let (f0, f1) = e.faces();
            let (v0, v1) = e.vertices();
            let mut all = [f0, f1, v0, v1];
            all.sort();
            assert_eq!(all, [0, 1, 2, 3], "{e:?}");
            let (o0, o1) = e.opposite().faces();
            assert_eq!((o0.min(o1), o0.max(o1)), (v0.min(v1), v0.max(v1)));
        }
    }

    #[test]
    fn regular_ideal_tetrahedron() {
        let g = GramMatrix::from_angles(&[PI / 3.0; 6]);
        assert!((g.det() + 27.0 / 16.0).abs() < 1e-14);
        assert_eq!(g.vertex_types(), [VertexType::Ideal; 4]);
    }

    #[test]
    fn vertex_type_signs() {
        // Right-angled: every vertex spherical, hence finite.
        let g = GramMatrix::from_angles(&[PI / 2.0; 6]);
        assert_eq!(g.vertex_types(), [VertexType::Finite; 4]);
        // Small angles everywhere: every vertex truncated.
        let g = GramMatrix::from_angles(&[0.3; 6]);
        assert_eq!(g.vertex_types(), [VertexType::Truncated; 4]);
        // A + B + C = π at v3 only.
        let g = GramMatrix::from_angles(&[PI / 3.0, PI / 3.0, PI / 3.0, 0.2, 0.2, 0.2]);
        let t = g.vertex_types();
        assert_eq!(t[3], VertexType::Ideal);
        assert_eq!(&t[..3], &[VertexType::Truncated; 3]);
    }

    #[test]
    fn cofactor_expansion_is_consistent() {
        let g = GramMatrix::from_angles(&[0.4, 0.9, 1.1, 0.7, 0.5, 1.3]);
        let c = g.cofactors();
        // G * adj(G) = det(G) I
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| g.0[i][k] * c[j][k]).sum();
                let expect = if i == j { g.det() } else { 0.0 };
                assert!((s - expect).abs() < 1e-13);
            }
        }
    }
}
