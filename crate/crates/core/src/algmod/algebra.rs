//! Algebras given by multiplication tables.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Field, Mat};
use crate::{Error, Result};

/// A finite-dimensional associative unital algebra over `F_p`, stored as
/// structure constants: `e_i · e_j = Σ_k table[(i·d + j)·d + k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    p: u64,
    dim: usize,
    table: Vec<u64>,
    unit: Vec<u64>,
}

impl core::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Algebra(dim {} over F_{})", self.dim, self.p)
    }
}

impl Algebra {
    pub fn new(p: u64, dim: usize, table: Vec<u64>, unit: Vec<u64>) -> Result<Algebra> {
        Field::new(p)?;
        if table.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::DimMismatch("algebra table"));
        }
        let a = Algebra {
            p,
            dim,
            table: table.into_iter().map(|c| c % p).collect(),
            unit: unit.into_iter().map(|c| c % p).collect(),
        };
        a.validate()?;
        Ok(a)
    }

    /// The ground field as a 1-dimensional algebra.
    pub fn ground_field(p: u64) -> Result<Algebra> {
        Algebra::new(p, 1, vec![1], vec![1])
    }

    /// `F_p[x]/(x^n)`, basis `1, x, …, x^(n-1)`.
    pub fn truncated_polynomial(p: u64, n: usize) -> Result<Algebra> {
        let mut table = vec![0u64; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    table[(i * n + j) * n + (i + j)] = 1;
                }
            }
        }
        let mut unit = vec![0u64; n];
        unit[0] = 1;
        Algebra::new(p, n, table, unit)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        Field::new(self.p).expect("validated on construction")
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        v[i] = 1;
        v
    }

    /// Product of two coordinate vectors.
    pub fn mul_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == 0 {
                    continue;
                }
                let coeff = x[i] * y[j] % self.p;
                for k in 0..self.dim {
                    let c = self.structure_constant(i, j, k);
                    if c != 0 {
                        out[k] = (out[k] + coeff * c) % self.p;
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` on the regular module.
    pub fn left_mult(&self, x: &[u64]) -> Mat {
        Mat::from_fn(self.p, self.dim, self.dim, |k, j| {
            let mut acc = 0u64;
            for i in 0..self.dim {
                acc = (acc + x[i] * self.structure_constant(i, j, k)) % self.p;
            }
            acc
        })
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult(&self, x: &[u64]) -> Mat {
        Mat::from_fn(self.p, self.dim, self.dim, |k, i| {
            let mut acc = 0u64;
            for j in 0..self.dim {
                acc = (acc + x[j] * self.structure_constant(i, j, k)) % self.p;
            }
            acc
        })
    }

    /// Checks associativity on all basis triples and the two unit laws,
    /// naming the first failing triple.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let ei = self.basis_vec(i);
            for j in 0..d {
                let ej = self.basis_vec(j);
                let eij = self.mul_vec(&ei, &ej);
                for k in 0..d {
                    let ek = self.basis_vec(k);
                    let lhs = self.mul_vec(&eij, &ek);
                    let rhs = self.mul_vec(&ei, &self.mul_vec(&ej, &ek));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails at basis triple ({}, {}, {})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            let ei = self.basis_vec(i);
            if self.mul_vec(&self.unit, &ei) != ei {
                return Err(Error::InvalidAlgebra(unit_defect(i, "left")));
            }
            if self.mul_vec(&ei, &self.unit) != ei {
                return Err(Error::InvalidAlgebra(unit_defect(i, "right")));
            }
        }
        Ok(())
    }

    /// Opposite algebra: the table transposed in its lower two indices.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut table = vec![0u64; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    table[(i * d + j) * d + k] = self.structure_constant(j, i, k);
                }
            }
        }
        Algebra { p: self.p, dim: d, table, unit: self.unit.clone() }
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| {
                self.structure_constant(i, j, k) == self.structure_constant(j, i, k)
            }))
        })
    }

    /// Direct product of two algebras (componentwise multiplication).
    pub fn product(&self, other: &Algebra) -> Result<Algebra> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        let d = self.dim + other.dim;
        let mut table = vec![0u64; d * d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    table[(i * d + j) * d + k] = self.structure_constant(i, j, k);
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    table[((self.dim + i) * d + self.dim + j) * d + self.dim + k] =
                        other.structure_constant(i, j, k);
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.extend_from_slice(&other.unit);
        Algebra::new(self.p, d, table, unit)
    }

    /// An order-stable fingerprint used as a cache key.
    pub fn fingerprint(&self) -> Vec<u64> {
        let mut v = vec![self.p, self.dim as u64];
        v.extend_from_slice(&self.table);
        v.extend_from_slice(&self.unit);
        v
    }
}

fn unit_defect(i: usize, side: &str) -> String {
    format!("declared unit fails the {} unit law on basis vector {}", side, i)
}

/// Path algebra of a finite acyclic quiver without relations.
///
/// The basis is the set of all paths: first the trivial paths (one per
/// vertex), then longer paths ordered by length and then by discovery.
/// Products compose paths function-style: `q · p` is "first `p`, then `q`",
/// so an arrow `a: v → w` satisfies `e_w · a = a = a · e_v`.
pub fn path_algebra(p: u64, vertices: usize, arrows: &[(usize, usize)]) -> Result<Algebra> {
    if vertices == 0 {
        return Err(Error::InvalidAlgebra(String::from("quiver needs at least one vertex")));
    }
    for &(s, t) in arrows {
        if s >= vertices || t >= vertices {
            return Err(Error::InvalidAlgebra(String::from("arrow endpoint out of range")));
        }
    }
    // paths as arrow index sequences; (source, target, arrows applied right-to-left)
    #[derive(Clone)]
    struct Path {
        source: usize,
        target: usize,
        seq: Vec<usize>,
    }
    let mut paths: Vec<Path> = (0..vertices)
        .map(|v| Path { source: v, target: v, seq: Vec::new() })
        .collect();
    let mut frontier: Vec<Path> = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for path in &frontier {
            for (ai, &(s, t)) in arrows.iter().enumerate() {
                if s == path.target {
                    // an acyclic quiver has no path using more arrows than exist
                    if path.seq.len() >= arrows.len() {
                        return Err(Error::InvalidAlgebra(String::from(
                            "quiver is cyclic: unbounded paths",
                        )));
                    }
                    let mut seq = path.seq.clone();
                    seq.push(ai);
                    next.push(Path { source: path.source, target: t, seq });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let d = paths.len();
    let mut table = vec![0u64; d * d * d];
    // q · p: first p then q; defined when p.target == q.source
    for (qi, q) in paths.iter().enumerate() {
        for (pi, path) in paths.iter().enumerate() {
            if path.target != q.source {
                continue;
            }
            let mut seq = path.seq.clone();
            seq.extend_from_slice(&q.seq);
            let k = paths
                .iter()
                .position(|r| r.source == path.source && r.target == q.target && r.seq == seq)
                .ok_or(Error::Internal("composite path missing from basis"))?;
            table[(qi * d + pi) * d + k] = 1;
        }
    }
    let mut unit = vec![0u64; d];
    for v in 0..vertices {
        unit[v] = 1;
    }
    Algebra::new(p, d, table, unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_is_valid() {
        let a = Algebra::ground_field(2).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.validate().is_ok());
    }

    #[test]
    fn a2_path_algebra_table() {
        // quiver 0 -> 1: basis e0, e1, arrow a with a = e1 · a = a · e0
        let a = path_algebra(2, 2, &[(0, 1)]).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.validate().is_ok());
        let e0 = a.basis_vec(0);
        let e1 = a.basis_vec(1);
        let arr = a.basis_vec(2);
        assert_eq!(a.mul_vec(&arr, &e0), arr);
        assert_eq!(a.mul_vec(&e1, &arr), arr);
        assert_eq!(a.mul_vec(&arr, &e1), vec![0, 0, 0]);
        assert_eq!(a.mul_vec(&e0, &arr), vec![0, 0, 0]);
        assert_eq!(a.mul_vec(&arr, &arr), vec![0, 0, 0]);
    }

    #[test]
    fn broken_unit_is_rejected() {
        // 1-dim algebra with e·e = 0 but declared unit e
        assert!(matches!(
            Algebra::new(2, 1, vec![0], vec![1]),
            Err(Error::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn opposite_is_involutive() {
        let a = path_algebra(3, 2, &[(0, 1)]).unwrap();
        assert_eq!(a.opposite().opposite(), a);
    }

    #[test]
    fn opposite_of_commutative_is_equal() {
        let a = Algebra::truncated_polynomial(2, 2).unwrap();
        assert!(a.is_commutative());
        assert_eq!(a.opposite(), a);
    }

    #[test]
    fn opposite_of_a2_swaps_arrow() {
        let a = path_algebra(2, 2, &[(0, 1)]).unwrap();
        let b = path_algebra(2, 2, &[(1, 0)]).unwrap();
        // bases align (e0, e1, arrow), so the tables must agree
        assert_eq!(a.opposite().table(), b.table());
    }

    #[test]
    fn left_right_mult_commute_by_associativity() {
        let a = path_algebra(5, 3, &[(0, 1), (1, 2)]).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let l = a.left_mult(&a.basis_vec(i));
                let r = a.right_mult(&a.basis_vec(j));
                assert_eq!(l.mul(&r).unwrap(), r.mul(&l).unwrap());
            }
        }
    }
}
