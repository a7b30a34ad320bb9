//! Polynomial feature expansion of order `k`.
//!
//! The map sends `x ∈ R^d` to the vector of all monomials of total degree at
//! most `k`, which has `C(d+k, k)` entries. Monomials are listed by total
//! degree, and within one degree in descending lexicographic order of their
//! exponent vectors, so for `d = 2, k = 2` the expansion is
//! `(1, x1, x2, x1², x1·x2, x2²)`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest value `extended_dim` will report. Keeps every dimension exactly
/// representable as an `f64`.
pub const MAX_EXTENDED_DIM: u64 = 1 << 53;

/// Largest number of monomials `build_map` will materialize.
pub const MAX_MAP_TERMS: u64 = 1 << 24;

/// Number of monomials of degree at most `k` in `d` variables, `C(d+k, k)`.
pub fn extended_dim(d: usize, k: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::invalid("input dimension must be at least 1"));
    }
    let overflow = || Error::Overflow(format!("C({d}+{k}, {k}) exceeds 2^53"));
    let d = d as u128;
    let mut c: u128 = 1;
    // c = C(d+i, i) after step i; each division is exact.
    for i in 1..=k as u128 {
        c = c.checked_mul(d + i).ok_or_else(overflow)? / i;
        if c > MAX_EXTENDED_DIM as u128 {
            return Err(overflow());
        }
    }
    Ok(c as u64)
}

/// The monomial basis `φ_k` for inputs of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFeatureMap {
    d: usize,
    k: usize,
    exponents: Vec<Vec<u32>>,
    // For every non-constant monomial: (index of the monomial with one less
    // power of `var`, var). Evaluation multiplies the parent by x[var].
    parents: Vec<(usize, usize)>,
}

impl PolyFeatureMap {
    pub fn new(d: usize, k: usize) -> Result<PolyFeatureMap> {
        let total = extended_dim(d, k)?;
        if total > MAX_MAP_TERMS {
            return Err(Error::Overflow(format!(
                "feature map with {total} monomials exceeds the {MAX_MAP_TERMS} term limit"
            )));
        }
        let mut exponents = Vec::with_capacity(total as usize);
        let mut current = vec![0u32; d];
        for degree in 0..=k as u32 {
            push_degree(&mut exponents, &mut current, 0, degree);
        }
        debug_assert_eq!(exponents.len() as u64, total);

        let index: HashMap<&[u32], usize> = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let mut parents = Vec::with_capacity(exponents.len().saturating_sub(1));
        for e in exponents.iter().skip(1) {
            let var = e
                .iter()
                .position(|&p| p > 0)
                .expect("non-constant monomial");
            let mut parent = e.clone();
            parent[var] -= 1;
            parents.push((index[parent.as_slice()], var));
        }
        Ok(PolyFeatureMap {
            d,
            k,
            exponents,
            parents,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.k
    }

    /// Length of the expanded vector.
    pub fn output_dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn expand(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.output_dim()];
        self.expand_into(x, &mut out)?;
        Ok(out)
    }

    /// Writes `φ_k(x)` into `out`, which must have length `output_dim()`.
    pub fn expand_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.len(),
            });
        }
        if out.len() != self.output_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.output_dim(),
                got: out.len(),
            });
        }
        out[0] = 1.0;
        for (j, &(parent, var)) in self.parents.iter().enumerate() {
            // parents always precede children in graded order
            out[j + 1] = out[parent] * x[var];
        }
        Ok(())
    }

    /// Expands every row of a row-major matrix with `self.input_dim()` columns.
    pub fn expand_rows(&self, rows: &[f64]) -> Result<Vec<f64>> {
        if !rows.len().is_multiple_of(self.d) {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: rows.len() % self.d,
            });
        }
        let width = self.output_dim();
        let mut out = vec![0.0; rows.len() / self.d * width];
        for (x, dst) in rows.chunks_exact(self.d).zip(out.chunks_exact_mut(width)) {
            self.expand_into(x, dst)?;
        }
        Ok(out)
    }
}

/// Convenience wrapper matching `PolyFeatureMap::new`.
pub fn build_map(d: usize, k: usize) -> Result<PolyFeatureMap> {
    PolyFeatureMap::new(d, k)
}

fn push_degree(out: &mut Vec<Vec<u32>>, current: &mut [u32], var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.to_vec());
        current[var] = 0;
        return;
    }
    for p in (0..=remaining).rev() {
        current[var] = p;
        push_degree(out, current, var + 1, remaining - p);
    }
    current[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Brute-force enumeration of all exponent vectors with sum <= k.
    fn enumerate(d: usize, k: u32) -> Vec<Vec<u32>> {
        let mut all = Vec::new();
        let mut e = vec![0u32; d];
        loop {
            if e.iter().sum::<u32>() <= k {
                all.push(e.clone());
            }
            let mut i = 0;
            loop {
                if i == d {
                    return all;
                }
                e[i] += 1;
                if e[i] <= k {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    fn direct_monomial(e: &[u32], x: &[f64]) -> f64 {
        e.iter().zip(x).map(|(&p, &v)| v.powi(p as i32)).product()
    }

    #[test]
    fn extended_dim_examples() {
        assert_eq!(extended_dim(65, 1).unwrap(), 66);
        assert_eq!(extended_dim(2, 2).unwrap(), 6);
        assert_eq!(extended_dim(3, 0).unwrap(), 1);
        assert_eq!(extended_dim(10, 3).unwrap(), 286);
    }

    #[test]
    fn extended_dim_rejects_overflow_and_zero_dim() {
        assert!(matches!(extended_dim(1000, 1000), Err(Error::Overflow(_))));
        assert!(matches!(extended_dim(0, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            PolyFeatureMap::new(100, 10),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn small_maps_have_expected_exponents() {
        let m = build_map(1, 2).unwrap();
        assert_eq!(m.exponents(), &[vec![0], vec![1], vec![2]]);
        let m = build_map(2, 1).unwrap();
        assert_eq!(m.exponents(), &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let m = build_map(2, 2).unwrap();
        assert_eq!(
            m.exponents(),
            &[
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }

    #[test]
    fn matches_enumeration_oracle() {
        for d in 1..=4 {
            for k in 0..=4u32 {
                let m = build_map(d, k as usize).unwrap();
                let mut ours = m.exponents().to_vec();
                let mut oracle = enumerate(d, k);
                assert_eq!(ours.len(), oracle.len());
                assert_eq!(ours[0], vec![0; d]);
                // graded order: degrees non-decreasing, descending lex within a degree
                for w in ours.windows(2) {
                    let (a, b): (u32, u32) = (w[0].iter().sum(), w[1].iter().sum());
                    assert!(a < b || (a == b && w[0] > w[1]));
                }
                ours.sort();
                oracle.sort();
                assert_eq!(ours, oracle);
            }
        }
    }

    #[test]
    fn expand_examples() {
        let m = build_map(2, 2).unwrap();
        assert_eq!(
            m.expand(&[2.0, 3.0]).unwrap(),
            vec![1.0, 2.0, 3.0, 4.0, 6.0, 9.0]
        );
        let m = build_map(3, 1).unwrap();
        assert_eq!(
            m.expand(&[0.5, -1.0, 7.0]).unwrap(),
            vec![1.0, 0.5, -1.0, 7.0]
        );
        let m = build_map(4, 3).unwrap();
        let z = m.expand(&[0.0; 4]).unwrap();
        assert_eq!(z[0], 1.0);
        assert!(z[1..].iter().all(|&v| v == 0.0));
        assert!(matches!(
            m.expand(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn expansion_matches_direct_monomials(
            x in proptest::collection::vec(-3.0f64..3.0, 3),
            k in 0usize..5,
            c in -2.0f64..2.0,
        ) {
            let m = build_map(3, k).unwrap();
            let phi = m.expand(&x).unwrap();
            prop_assert_eq!(phi.len() as u64, extended_dim(3, k).unwrap());
            let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
            let phi_c = m.expand(&scaled).unwrap();
            let l1: f64 = x.iter().map(|v| v.abs()).sum();
            let phi_l1: f64 = phi.iter().map(|v| v.abs()).sum();
            prop_assert!(phi_l1 <= phi.len() as f64 * l1.max(1.0).powi(k as i32) * (1.0 + 1e-12));
            for (j, e) in m.exponents().iter().enumerate() {
                let direct = direct_monomial(e, &x);
                prop_assert!((phi[j] - direct).abs() <= 1e-12 * direct.abs().max(1.0));
                let t = e.iter().sum::<u32>() as i32;
                let want = c.powi(t) * phi[j];
                prop_assert!((phi_c[j] - want).abs() <= 1e-10 * want.abs().max(1.0));
            }
        }

        #[test]
        fn order_one_is_affine_embedding(x in proptest::collection::vec(-10.0f64..10.0, 1..8)) {
            let m = build_map(x.len(), 1).unwrap();
            let phi = m.expand(&x).unwrap();
            prop_assert_eq!(phi[0], 1.0);
            prop_assert_eq!(&phi[1..], x.as_slice());
        }
    }
}
