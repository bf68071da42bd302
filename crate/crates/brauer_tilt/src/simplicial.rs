//! The simplicial complex of two-term pretilting complexes: vertices are the
//! signed walks, faces are the subsets whose direct sum stays pretilting.
//! Hom vanishing is additive over direct sums, so faces are exactly the
//! cliques of the pairwise compatibility graph.

use rayon::prelude::*;

use crate::algebra::{hom_basis_ignoring_multiplicity, Algebra};
use crate::homotopy::{compatible_fast, is_pretilting, is_pretilting_pair, FastCheck, TwoTermComplex};
use crate::tree::BrauerTree;
use crate::walks::{enumerate_signed_walks, to_complex, SignedWalk};
use crate::{Error, Result};

/// The face complex of a Brauer tree, with face counts and facets.
#[derive(Debug)]
pub struct FaceComplex {
    n: usize,
    alg: Algebra,
    walks: Vec<SignedWalk>,
    complexes: Vec<TwoTermComplex>,
    g: Vec<Vec<i64>>,
    /// compatibility graph as adjacency bitsets
    adj: Vec<u128>,
    /// f_{-1} = 1, f_0, ..., f_{n-1}
    f: Vec<u64>,
    /// all faces of maximal size n, each sorted
    facets: Vec<Vec<u16>>,
    /// pairs the pre-filter left Unknown that the oracle rejected
    filter_gaps: Vec<(u16, u16)>,
    /// set when the input tree had multiplicity > 1
    multiplicity_note: Option<String>,
}

/// Builds the face complex.  Trees of any multiplicity are accepted: the
/// vertex set and face counts do not depend on it, so the Hom oracle of the
/// multiplicity-one algebra is used (and a note is attached when m > 1).
pub fn build_complex(tree: &BrauerTree) -> Result<FaceComplex> {
    let n = tree.num_edges();
    let nv = n * (n + 1);
    if nv > 128 {
        return Err(Error::TooLarge(nv, 128));
    }
    let alg = hom_basis_ignoring_multiplicity(tree);
    let multiplicity_note = (tree.multiplicity() > 1).then(|| {
        format!(
            "multiplicity {} ignored: face counts are multiplicity-independent",
            tree.multiplicity()
        )
    });
    let walks = enumerate_signed_walks(tree);
    let complexes: Vec<TwoTermComplex> = walks.iter().map(|w| to_complex(w, &alg)).collect();
    for c in &complexes {
        assert!(
            is_pretilting(&alg, c)?,
            "every walk complex must be pretilting"
        );
    }
    let g: Vec<Vec<i64>> = walks.iter().map(|w| w.g_vector(n)).collect();

    // pairwise compatibility: combinatorial pre-filter, Hom oracle on Unknown
    let pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|i| (i + 1..nv).map(move |j| (i, j)))
        .collect();
    let verdicts: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            match compatible_fast(tree, &walks[i], &walks[j]) {
                FastCheck::Incompatible => (false, false),
                FastCheck::Unknown => {
                    let ok = is_pretilting_pair(&alg, &complexes[i], &complexes[j])
                        .expect("same algebra");
                    (ok, !ok)
                }
            }
        })
        .collect();
    let mut adj = vec![0u128; nv];
    let mut filter_gaps = Vec::new();
    for (&(i, j), &(compatible, gap)) in pairs.iter().zip(&verdicts) {
        if compatible {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        if gap {
            filter_gaps.push((i as u16, j as u16));
        }
    }

    let (counts, facets) = count_cliques(&adj, nv, n);
    let mut f = vec![1u64];
    f.extend_from_slice(&counts[1..=n]);
    Ok(FaceComplex {
        n,
        alg,
        walks,
        complexes,
        g,
        adj,
        f,
        facets,
        filter_gaps,
        multiplicity_note,
    })
}

/// Counts cliques by size (index = size, up to `max_size`) and collects the
/// cliques of full size.  Plain ordered depth-first search: every clique is
/// visited exactly once, so the work is proportional to the face count.
fn count_cliques(adj: &[u128], nv: usize, max_size: usize) -> (Vec<u64>, Vec<Vec<u16>>) {
    let mut counts = vec![0u64; max_size + 1];
    let mut facets = Vec::new();
    let mut current: Vec<u16> = Vec::with_capacity(max_size);
    let all = if nv == 128 {
        u128::MAX
    } else {
        (1u128 << nv) - 1
    };
    fn rec(
        adj: &[u128],
        cand: u128,
        max_size: usize,
        current: &mut Vec<u16>,
        counts: &mut [u64],
        facets: &mut Vec<Vec<u16>>,
    ) {
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            current.push(v as u16);
            counts[current.len()] += 1;
            if current.len() == max_size {
                facets.push(current.clone());
            } else {
                let above = if v + 1 >= 128 { 0 } else { !0u128 << (v + 1) };
                rec(adj, cand & adj[v] & above, max_size, current, counts, facets);
            }
            current.pop();
        }
    }
    rec(adj, all, max_size, &mut current, &mut counts, &mut facets);
    (counts, facets)
}

impl FaceComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn walks(&self) -> &[SignedWalk] {
        &self.walks
    }

    pub fn complexes(&self) -> &[TwoTermComplex] {
        &self.complexes
    }

    pub fn g_vectors(&self) -> &[Vec<i64>] {
        &self.g
    }

    pub fn compatible(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    /// f-vector (f_{-1} = 1, f_0, ..., f_{n-1}).
    pub fn f_vector(&self) -> &[u64] {
        &self.f
    }

    pub fn h_vector(&self) -> Vec<i128> {
        f_to_h(&self.f.iter().map(|&x| x as i128).collect::<Vec<_>>())
    }

    pub fn facets(&self) -> &[Vec<u16>] {
        &self.facets
    }

    pub fn filter_gaps(&self) -> &[(u16, u16)] {
        &self.filter_gaps
    }

    pub fn multiplicity_note(&self) -> Option<&str> {
        self.multiplicity_note.as_deref()
    }

    /// Per-size counts of faces lying in the closed halfspaces at edge `i`:
    /// (no member signs `i` positive, no member signs it negative, neither).
    /// Index 0 is the empty face, counted in all three.
    pub fn halfspace_counts(&self, i: usize) -> Result<Vec<(u64, u64, u64)>> {
        if i >= self.n {
            return Err(Error::UnknownEdge(i + 1));
        }
        let nv = self.walks.len();
        let mask_of = |pred: &dyn Fn(usize) -> bool| -> u128 {
            (0..nv).filter(|&w| pred(w)).fold(0u128, |m, w| m | 1 << w)
        };
        let le = mask_of(&|w| self.g[w][i] <= 0);
        let ge = mask_of(&|w| self.g[w][i] >= 0);
        let zero = le & ge;
        let count = |mask: u128| -> Vec<u64> {
            let (counts, _) = count_cliques_masked(&self.adj, mask, self.n);
            counts
        };
        let (cle, cge, c0) = (count(le), count(ge), count(zero));
        let mut out = vec![(1, 1, 1)];
        for j in 1..=self.n {
            out.push((cle[j], cge[j], c0[j]));
        }
        Ok(out)
    }

    /// Joint pretilting check on a face: the whole direct sum at once,
    /// not just pairwise.
    pub fn face_is_pretilting(&self, face: &[u16]) -> Result<bool> {
        let parts: Vec<&TwoTermComplex> = face.iter().map(|&w| &self.complexes[w as usize]).collect();
        let sum = TwoTermComplex::direct_sum(&self.alg, &parts);
        is_pretilting(&self.alg, &sum)
    }

    /// Spot-checks `sample` facets (deterministic seed) for joint
    /// pretilting, confirming that pairwise compatibility suffices.
    pub fn spot_check_facets(&self, sample: usize, seed: u64) -> Result<bool> {
        let mut state = seed | 1;
        let mut pick = || {
            // xorshift; plenty for sampling test cases
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as usize
        };
        let m = self.facets.len();
        let indices: Vec<usize> = if m <= sample {
            (0..m).collect()
        } else {
            (0..sample).map(|_| pick() % m).collect()
        };
        for idx in indices {
            if !self.face_is_pretilting(&self.facets[idx].clone())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Verifies the sphere conditions: purity (all maximal cliques have full
    /// size), every ridge in exactly two facets, a connected facet-adjacency
    /// graph, and the Euler characteristic of an (n-1)-sphere.  Returns the
    /// list of violations (empty = all good).
    pub fn sphere_checks(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let nv = self.walks.len();

        let mut maximal_sizes = Vec::new();
        let all = if nv == 128 {
            u128::MAX
        } else {
            (1u128 << nv) - 1
        };
        bron_kerbosch(&self.adj, 0, all, 0, &mut maximal_sizes);
        if maximal_sizes.iter().any(|&s| s != self.n) {
            violations.push(format!(
                "not pure: maximal face sizes {:?}",
                maximal_sizes
                    .iter()
                    .filter(|&&s| s != self.n)
                    .collect::<Vec<_>>()
            ));
        }
        if maximal_sizes.len() != self.facets.len() {
            violations.push(format!(
                "{} maximal cliques vs {} facets",
                maximal_sizes.len(),
                self.facets.len()
            ));
        }

        // ridges lie in exactly two facets
        let mut ridge_count: std::collections::HashMap<Vec<u16>, usize> = Default::default();
        for facet in &self.facets {
            for drop in 0..facet.len() {
                let mut ridge = facet.clone();
                ridge.remove(drop);
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        if let Some((r, c)) = ridge_count.iter().find(|(_, &c)| c != 2) {
            violations.push(format!("ridge {r:?} lies in {c} facets"));
        }

        // connectivity of the facet-adjacency graph
        if !self.facets.is_empty() {
            let mut reached = vec![false; self.facets.len()];
            let mut ridge_to: std::collections::HashMap<Vec<u16>, Vec<usize>> = Default::default();
            for (fi, facet) in self.facets.iter().enumerate() {
                for drop in 0..facet.len() {
                    let mut ridge = facet.clone();
                    ridge.remove(drop);
                    ridge_to.entry(ridge).or_default().push(fi);
                }
            }
            let mut stack = vec![0usize];
            reached[0] = true;
            while let Some(fi) = stack.pop() {
                let facet = &self.facets[fi];
                for drop in 0..facet.len() {
                    let mut ridge = facet.clone();
                    ridge.remove(drop);
                    for &other in &ridge_to[&ridge] {
                        if !reached[other] {
                            reached[other] = true;
                            stack.push(other);
                        }
                    }
                }
            }
            if reached.iter().any(|r| !r) {
                violations.push("facet-adjacency graph disconnected".into());
            }
        }

        // Euler characteristic of an (n-1)-sphere
        let chi: i128 = (0..self.n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * self.f[j + 1] as i128
            })
            .sum();
        let expected = 1 + if self.n % 2 == 0 { -1 } else { 1 };
        if chi != expected {
            violations.push(format!("Euler characteristic {chi}, expected {expected}"));
        }
        violations
    }
}

fn count_cliques_masked(adj: &[u128], mask: u128, max_size: usize) -> (Vec<u64>, Vec<Vec<u16>>) {
    let restricted: Vec<u128> = adj.iter().map(|&row| row & mask).collect();
    let mut counts = vec![0u64; max_size + 1];
    let mut facets = Vec::new();
    let mut current = Vec::with_capacity(max_size);
    fn rec(
        adj: &[u128],
        cand: u128,
        max_size: usize,
        current: &mut Vec<u16>,
        counts: &mut [u64],
        facets: &mut Vec<Vec<u16>>,
    ) {
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            current.push(v as u16);
            counts[current.len()] += 1;
            if current.len() == max_size {
                facets.push(current.clone());
            } else {
                let above = if v + 1 >= 128 { 0 } else { !0u128 << (v + 1) };
                rec(adj, cand & adj[v] & above, max_size, current, counts, facets);
            }
            current.pop();
        }
    }
    rec(&restricted, mask, max_size, &mut current, &mut counts, &mut facets);
    (counts, facets)
}

/// Bron-Kerbosch with pivoting; records the size of every maximal clique.
fn bron_kerbosch(adj: &[u128], r_size: usize, p: u128, x: u128, out: &mut Vec<usize>) {
    if p == 0 && x == 0 {
        out.push(r_size);
        return;
    }
    let union = p | x;
    let pivot = {
        let mut best = usize::MAX;
        let mut best_deg = 0;
        let mut rest = union;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (p & adj[v]).count_ones();
            if best == usize::MAX || deg > best_deg {
                best = v;
                best_deg = deg;
            }
        }
        best
    };
    let mut todo = p & !adj[pivot];
    let mut p = p;
    let mut x = x;
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        bron_kerbosch(adj, r_size + 1, p & adj[v], x & adj[v], out);
        p &= !(1u128 << v);
        x |= 1u128 << v;
    }
}

/// h-vector from the f-vector: coefficients of F(x-1) where
/// F(x) = sum_j f_{j-1} x^{n-j}.
pub fn f_to_h(f: &[i128]) -> Vec<i128> {
    assert!(!f.is_empty() && f[0] == 1, "f_{{-1}} must be 1");
    let n = f.len() - 1;
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                    sign * f[j] * binomial(n - j, k - j)
                })
                .sum()
        })
        .collect()
}

/// Closed form for the f-vector: f_{j-1} = (n+j)! / (j! j! (n-j)!).
pub fn formula_f(n: usize) -> Vec<i128> {
    (0..=n)
        .map(|j| {
            binomial(n + j, j)
                .checked_mul(binomial(n, j))
                .expect("f-vector overflow")
        })
        .collect()
}

/// Closed form for the h-vector: h_j = binomial(n, j)^2.
pub fn formula_h(n: usize) -> Vec<i128> {
    (0..=n)
        .map(|j| {
            let b = binomial(n, j);
            b.checked_mul(b).expect("h-vector overflow")
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as i128)
            .expect("binomial overflow");
        acc /= (i + 1) as i128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_plane_trees;

    #[test]
    fn two_edge_path_f_and_h() {
        let c = build_complex(&BrauerTree::line(2)).unwrap();
        assert_eq!(c.f_vector(), &[1, 6, 6]);
        assert_eq!(c.h_vector(), vec![1, 4, 1]);
        assert_eq!(c.facets().len(), 6);
    }

    #[test]
    fn single_edge_f_vector() {
        let c = build_complex(&BrauerTree::line(1)).unwrap();
        assert_eq!(c.f_vector(), &[1, 2]);
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn three_edge_line_matches_formula() {
        let c = build_complex(&BrauerTree::line(3)).unwrap();
        assert_eq!(c.f_vector(), &[1, 12, 30, 20]);
        let formula: Vec<u64> = formula_f(3).iter().map(|&x| x as u64).collect();
        assert_eq!(c.f_vector(), &formula[..]);
    }

    #[test]
    fn f_to_h_examples() {
        assert_eq!(f_to_h(&[1, 6, 6]), vec![1, 4, 1]);
        assert_eq!(f_to_h(&[1, 2]), vec![1, 1]);
        for n in 1..=8 {
            let h = f_to_h(&formula_f(n));
            assert_eq!(h, formula_h(n));
            assert_eq!(h[0], 1);
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(formula_f(2), vec![1, 6, 6]);
        assert_eq!(formula_f(3), vec![1, 12, 30, 20]);
        assert_eq!(formula_f(3)[3], binomial(6, 3));
        assert_eq!(formula_h(2), vec![1, 4, 1]);
        // facet count is the central binomial coefficient
        for n in 1..=9 {
            assert_eq!(formula_f(n)[n], binomial(2 * n, n));
        }
    }

    #[test]
    fn halfspace_counts_on_the_hexagon() {
        let c = build_complex(&BrauerTree::line(2)).unwrap();
        let counts = c.halfspace_counts(0).unwrap();
        // size-1 faces avoiding +1 on edge 1: -e1, +-e2, e2-e1
        assert_eq!(counts[1].0, 4);
        assert_eq!(counts[1].1, 4);
        assert_eq!(counts[1].2, 2);
        // inclusion-exclusion per size
        for j in 1..=2 {
            let (le, ge, zero) = counts[j];
            assert_eq!(le + ge - zero, c.f_vector()[j]);
        }
        assert!(c.halfspace_counts(5).is_err());
    }

    #[test]
    fn halfspace_symmetry_small() {
        for n in 1..=4 {
            for tree in enumerate_plane_trees(n).unwrap() {
                let c = build_complex(&tree).unwrap();
                for i in 0..n {
                    for (le, ge, _) in c.halfspace_counts(i).unwrap() {
                        assert_eq!(le, ge);
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_checks_small() {
        for n in 1..=4 {
            for tree in enumerate_plane_trees(n).unwrap() {
                let c = build_complex(&tree).unwrap();
                let violations = c.sphere_checks();
                assert!(violations.is_empty(), "{violations:?}");
            }
        }
    }

    #[test]
    fn euler_characteristic_examples() {
        // S^0: two points
        let c1 = build_complex(&BrauerTree::line(1)).unwrap();
        let chi1: i128 = c1.f_vector()[1] as i128;
        assert_eq!(chi1, 2);
        // hexagon: 6 - 6 = 0
        let c2 = build_complex(&BrauerTree::line(2)).unwrap();
        assert_eq!(c2.f_vector()[1] as i128 - c2.f_vector()[2] as i128, 0);
    }

    #[test]
    fn facet_g_vectors_are_linearly_independent() {
        for n in 1..=4 {
            for tree in enumerate_plane_trees(n).unwrap() {
                let c = build_complex(&tree).unwrap();
                for facet in c.facets() {
                    let mat: Vec<Vec<i128>> = (0..n)
                        .map(|row| {
                            facet
                                .iter()
                                .map(|&w| c.g_vectors()[w as usize][row] as i128)
                                .collect()
                        })
                        .collect();
                    assert_ne!(crate::linalg::det(&mat), 0);
                }
            }
        }
    }

    #[test]
    fn facet_spot_check_confirms_joint_pretilting() {
        for n in 1..=4 {
            for tree in enumerate_plane_trees(n).unwrap() {
                let c = build_complex(&tree).unwrap();
                assert!(c.spot_check_facets(100, 0xB0_5EED).unwrap());
            }
        }
    }

    #[test]
    fn derived_invariance_at_small_scale() {
        for n in 1..=4 {
            let trees = enumerate_plane_trees(n).unwrap();
            let reference = build_complex(&trees[0]).unwrap().f_vector().to_vec();
            for tree in &trees[1..] {
                assert_eq!(build_complex(tree).unwrap().f_vector(), &reference[..]);
            }
        }
    }

    #[test]
    fn multiplicity_two_gets_a_note() {
        let t = BrauerTree::line(2);
        let bumped = BrauerTree::new(
            t.vertices().to_vec(),
            (0..2).map(|e| t.endpoints(e)).collect(),
            t.vertices()
                .iter()
                .map(|&v| (v, t.cyclic_order(v).to_vec()))
                .collect(),
            2,
            0,
        )
        .unwrap();
        let c = build_complex(&bumped).unwrap();
        assert!(c.multiplicity_note().is_some());
        assert_eq!(c.f_vector(), &[1, 6, 6]);
    }
}
