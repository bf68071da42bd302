//! The g-polytope: the union of the simplices spanned by the origin and the
//! g-vectors of each facet of the face complex.  Every facet matrix is
//! unimodular, so lattice-point membership is pure integer arithmetic; the
//! convex hull is computed separately (exact rational hyperplanes) only to
//! certify convexity.

use rayon::prelude::*;

use crate::linalg;
use crate::simplicial::FaceComplex;
use crate::{Error, Result};

/// Union-of-unimodular-simplices model of the g-polytope.
#[derive(Debug, Clone)]
pub struct GPolytope {
    n: usize,
    /// all g-vectors, in walk order
    vertices: Vec<Vec<i64>>,
    /// facet member walk indices
    facet_walks: Vec<Vec<u16>>,
    /// per facet: the matrix with the member g-vectors as columns
    facet_mats: Vec<Vec<Vec<i128>>>,
    /// exact integer inverses (unimodularity)
    facet_invs: Vec<Vec<Vec<i128>>>,
}

/// Builds the polytope from a face complex.  Panics with
/// `NonUnimodularFacet` if any facet matrix fails |det| = 1; for these
/// complexes the facet g-vectors always form a lattice basis.
pub fn build_polytope(complex: &FaceComplex) -> GPolytope {
    let n = complex.n();
    let vertices: Vec<Vec<i64>> = complex.g_vectors().to_vec();
    let mut facet_mats = Vec::with_capacity(complex.facets().len());
    let mut facet_invs = Vec::with_capacity(complex.facets().len());
    for facet in complex.facets() {
        let mat: Vec<Vec<i128>> = (0..n)
            .map(|row| {
                facet
                    .iter()
                    .map(|&w| i128::from(vertices[w as usize][row]))
                    .collect()
            })
            .collect();
        let inv = linalg::inverse_unimodular(&mat)
            .unwrap_or_else(|| panic!("NonUnimodularFacet: |det| != 1 for facet {facet:?}"));
        facet_mats.push(mat);
        facet_invs.push(inv);
    }
    GPolytope {
        n,
        vertices,
        facet_walks: complex.facets().to_vec(),
        facet_mats,
        facet_invs,
    }
}

impl GPolytope {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<u16>] {
        &self.facet_walks
    }

    /// Membership of an integer point in the dilate `k * P`, by testing the
    /// barycentric coordinates against each unimodular facet simplex.
    pub fn contains(&self, z: &[i64], k: i64) -> Result<bool> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        assert!(k >= 0);
        let zz: Vec<i128> = z.iter().map(|&x| i128::from(x)).collect();
        Ok(self.contains_inner(&zz, i128::from(k)))
    }

    fn contains_inner(&self, z: &[i128], k: i128) -> bool {
        self.facet_invs.iter().any(|inv| {
            let lambda = linalg::mat_vec(inv, z);
            lambda.iter().all(|&l| l >= 0) && lambda.iter().sum::<i128>() <= k
        })
    }

    /// Lattice point counts L(0), ..., L(k_max) of the dilates, by scanning
    /// the box [-k, k]^n (the polytope sits inside [-1, 1]^n).
    pub fn ehrhart_counts(&self, k_max: usize) -> Result<Vec<u64>> {
        self.counts_filtered(k_max, |_| true)
    }

    /// Lattice counts of `kP` intersected with `z_i <= 0` and `z_i >= 0`.
    pub fn halfspace_lattice_counts(&self, i: usize, k_max: usize) -> Result<(Vec<u64>, Vec<u64>)> {
        if i >= self.n {
            return Err(Error::UnknownEdge(i + 1));
        }
        let le = self.counts_filtered(k_max, |z| z[i] <= 0)?;
        let ge = self.counts_filtered(k_max, |z| z[i] >= 0)?;
        Ok((le, ge))
    }

    fn counts_filtered(
        &self,
        k_max: usize,
        keep: impl Fn(&[i128]) -> bool + Sync,
    ) -> Result<Vec<u64>> {
        let side = 2 * k_max as u128 + 1;
        let total = side.checked_pow(self.n as u32).unwrap_or(u128::MAX);
        if total > 100_000_000 {
            return Err(Error::BoxTooLarge(total));
        }
        let mut out = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let kk = k as i128;
            let first_range: Vec<i128> = (-kk..=kk).collect();
            let count: u64 = first_range
                .par_iter()
                .map(|&first| {
                    let mut z = vec![0i128; self.n];
                    z[0] = first;
                    let mut local = 0u64;
                    scan_rest(&mut z, 1, kk, &mut |z| {
                        if keep(z) && self.contains_inner(z, kk) {
                            local += 1;
                        }
                    });
                    local
                })
                .sum();
            out.push(count);
        }
        Ok(out)
    }

    /// Vertex set is centrally symmetric and, slice by slice, the lattice
    /// counts of the two halfspaces at every coordinate agree up to the
    /// n-th dilate.
    pub fn check_central_symmetry(&self) -> Result<bool> {
        let vset: std::collections::BTreeSet<&Vec<i64>> = self.vertices.iter().collect();
        for v in &self.vertices {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            if !vset.contains(&neg) {
                return Ok(false);
            }
        }
        for i in 0..self.n {
            let (le, ge) = self.halfspace_lattice_counts(i, self.n)?;
            if le != ge {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive facet-inequality description of conv(vertices): every
    /// hyperplane through n vertices with the whole vertex set on one side,
    /// as primitive inequalities num . z <= den (den > 0).
    fn hull_inequalities(&self) -> Vec<(Vec<i128>, i128)> {
        let nv = self.vertices.len();
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..self.n).collect();
        loop {
            // solve h . v = 1 on the subset via Cramer's rule
            let mat: Vec<Vec<i128>> = subset
                .iter()
                .map(|&vi| self.vertices[vi].iter().map(|&x| i128::from(x)).collect())
                .collect();
            let d = linalg::det(&mat);
            if d != 0 {
                let mut num: Vec<i128> = (0..self.n)
                    .map(|j| {
                        let mut m = mat.clone();
                        for row in m.iter_mut() {
                            row[j] = 1;
                        }
                        linalg::det(&m)
                    })
                    .collect();
                let mut den = d;
                if den < 0 {
                    den = -den;
                    num.iter_mut().for_each(|x| *x = -*x);
                }
                let valid = self.vertices.iter().all(|v| {
                    let dot: i128 = num
                        .iter()
                        .zip(v)
                        .map(|(&a, &b)| a * i128::from(b))
                        .sum();
                    dot <= den
                });
                if valid {
                    let mut g = den;
                    for &x in &num {
                        g = gcd(g, x.abs());
                    }
                    let key: (Vec<i128>, i128) =
                        (num.iter().map(|&x| x / g).collect(), den / g);
                    if seen.insert(key.clone()) {
                        out.push(key);
                    }
                }
            }
            // next n-subset of 0..nv in lexicographic order
            let mut i = self.n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if subset[i] + (self.n - i) < nv {
                    subset[i] += 1;
                    for j in i + 1..self.n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Convexity certificate: the lattice counts of the triangulated union
    /// agree with those of conv(vertices) for k = 0..n.  Containment of the
    /// union in the hull holds by construction, so equal counts certify
    /// equality of the two closed bodies.
    pub fn check_convexity(&self) -> Result<bool> {
        const MAX_DIM: usize = 6;
        if self.n > MAX_DIM {
            return Err(Error::DimensionTooLarge(self.n, MAX_DIM));
        }
        let inequalities = self.hull_inequalities();
        let union_counts = self.ehrhart_counts(self.n)?;
        for k in 0..=self.n {
            let kk = k as i128;
            let mut z = vec![0i128; self.n];
            let mut hull_count = 0u64;
            scan_all(&mut z, 0, kk, &mut |z| {
                let inside = inequalities.iter().all(|(num, den)| {
                    let dot: i128 = num.iter().zip(z).map(|(&a, &b)| a * b).sum();
                    dot <= kk * den
                });
                if inside {
                    hull_count += 1;
                }
            });
            if hull_count != union_counts[k] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sampled certificate that distinct facet simplices have disjoint
    /// interiors: no random rational point is strictly interior to two.
    pub fn check_disjoint_interiors(&self, samples: usize, seed: u64) -> bool {
        let mut state = seed | 1;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let den: i128 = 997;
        for _ in 0..samples {
            let p: Vec<i128> = (0..self.n)
                .map(|_| (next() % (2 * den as u64 + 1)) as i128 - den)
                .collect();
            let mut claims = 0;
            for inv in &self.facet_invs {
                let lambda = linalg::mat_vec(inv, &p);
                if lambda.iter().all(|&l| l > 0) && lambda.iter().sum::<i128>() < den {
                    claims += 1;
                }
            }
            if claims > 1 {
                return false;
            }
        }
        true
    }

    /// OFF export of the boundary triangulation: the outer face of each
    /// facet simplex.  Dimension 3 uses the plain OFF header; other
    /// dimensions use nOFF with an explicit dimension line (for n = 1 the
    /// "faces" degenerate to single vertices of the segment's boundary).
    pub fn to_off(&self) -> String {
        let mut s = String::new();
        if self.n == 3 {
            s.push_str("OFF\n");
        } else {
            s.push_str(&format!("nOFF\n{}\n", self.n));
        }
        s.push_str(&format!(
            "{} {} 0\n",
            self.vertices.len(),
            self.facet_walks.len()
        ));
        for v in &self.vertices {
            let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&coords.join(" "));
            s.push('\n');
        }
        for facet in &self.facet_walks {
            let ids: Vec<String> = facet.iter().map(|w| w.to_string()).collect();
            s.push_str(&format!("{} {}\n", facet.len(), ids.join(" ")));
        }
        s
    }

    pub fn write_off(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_off())?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.n,
            "vertices": self.vertices,
            "facets": self.facet_walks,
        })
    }

    /// Test-support constructor: same polytope with one facet simplex
    /// removed (no longer a valid triangulated ball).
    pub fn without_facet(&self, idx: usize) -> GPolytope {
        let mut p = self.clone();
        p.facet_walks.remove(idx);
        p.facet_mats.remove(idx);
        p.facet_invs.remove(idx);
        p
    }
}

/// h*-vector from lattice counts: h*_j = sum_i (-1)^i C(n+1, i) L(j-i).
pub fn h_star(counts: &[u64], n: usize) -> Vec<i128> {
    assert!(counts.len() > n, "need counts up to the n-th dilate");
    (0..=n)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * crate::simplicial::binomial(n + 1, i) * counts[j - i] as i128
                })
                .sum()
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn scan_rest(z: &mut Vec<i128>, from: usize, k: i128, visit: &mut impl FnMut(&[i128])) {
    if from == z.len() {
        visit(z);
        return;
    }
    for x in -k..=k {
        z[from] = x;
        scan_rest(z, from + 1, k, visit);
    }
}

fn scan_all(z: &mut Vec<i128>, from: usize, k: i128, visit: &mut impl FnMut(&[i128])) {
    scan_rest(z, from, k, visit)
}
