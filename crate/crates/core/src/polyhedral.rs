//! Stretched-cube supports, their closed-form mixed cells and the binomial
//! start systems attached to each cell.
//!
//! The `i`-th support of the family is the set of 0/1 vectors with
//! coordinate `i` doubled. Under the lifting `ω_i(v) = i Σ_j v_j` the fine
//! mixed cells are indexed by permutations `σ`: the cell has inner normal
//! `(-σ(1), …, -σ(n), 1)` and volume `2^{Fix(σ)}`.
//!
//! Lattice points of each support are indexed by the bitmask of their
//! nonzero coordinates, so point `k` of support `i` has `v_j = [bit j of k]`
//! (doubled when `j = i`).

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::polysys::{default_names, Monomial, PolySystem, Polynomial, Support, Term};
use crate::C64;

/// A bijection of `{1, …, n}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, &v)| v == i + 1)
            .count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    pub permutation: Permutation,
    /// Per equation, indices into the support of the edge endpoints `(u_j, v_j)`.
    pub edge_indices: Vec<(usize, usize)>,
    /// Per equation, the edge endpoints themselves.
    pub edges: Vec<(Monomial, Monomial)>,
    /// Inner normal of the lifted cell, length `n + 1`.
    pub normal: Vec<i64>,
    /// `beta_j`, the minimum of the normal's linear form on lifted support `j`.
    pub beta: Vec<i64>,
    pub is_fine: bool,
    pub volume: u64,
}

fn point_index(v: &[u32]) -> usize {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, _)| 1usize << i)
        .sum()
}

fn stretched_point(n: usize, i: usize, index: usize) -> Monomial {
    Monomial::new(
        (0..n)
            .map(|j| {
                let bit = (index >> j & 1) as u32;
                if j == i {
                    2 * bit
                } else {
                    bit
                }
            })
            .collect(),
    )
}

/// Supports `𝒜_1, …, 𝒜_n` of the stretched cubes, `2^n` points each.
pub fn stretched_cube_support(n: usize) -> Result<Support> {
    if n == 0 || n > 20 {
        return Err(Error::InvalidArgument(format!(
            "stretched cubes need 1 <= n <= 20, got {n}"
        )));
    }
    let sets = (0..n)
        .map(|i| (0..1usize << n).map(|k| stretched_point(n, i, k)).collect())
        .collect();
    Support::new(n, sets)
}

/// Lift of a point of support `i` (1-based): `i` times its coordinate sum.
pub fn lift(i: usize, v: &[u32]) -> i64 {
    i as i64 * v.iter().map(|&e| e as i64).sum::<i64>()
}

/// Integer weights of every point of every support, in support order.
pub fn stretched_lifting(n: usize) -> Result<Vec<Vec<i64>>> {
    let support = stretched_cube_support(n)?;
    Ok(support
        .sets()
        .iter()
        .enumerate()
        .map(|(i, set)| set.iter().map(|v| lift(i + 1, v)).collect())
        .collect())
}

/// `⟨(v, ω_j(v)), normal⟩` for a point of support `j` (1-based).
pub fn lifted_inner_product(j: usize, v: &[u32], normal: &[i64]) -> i64 {
    let head: i64 = v.iter().zip(normal).map(|(&e, &s)| e as i64 * s).sum();
    head + lift(j, v) * normal[v.len()]
}

pub fn perm_to_mixed_cell(sigma: &Permutation, n: usize) -> Result<MixedCell> {
    if sigma.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: sigma.len(),
        });
    }
    Permutation::new(sigma.images().to_vec())?;
    let endpoint = |j: usize, inclusive: bool| {
        Monomial::new(
            (1..=n)
                .map(|i| {
                    let s = sigma.image(i);
                    let on = if inclusive { s >= j } else { s > j };
                    match (on, i == j) {
                        (false, _) => 0,
                        (true, true) => 2,
                        (true, false) => 1,
                    }
                })
                .collect(),
        )
    };
    let edges: Vec<(Monomial, Monomial)> = (1..=n)
        .map(|j| (endpoint(j, false), endpoint(j, true)))
        .collect();
    let edge_indices = edges
        .iter()
        .map(|(u, v)| (point_index(u), point_index(v)))
        .collect();
    let normal: Vec<i64> = sigma
        .images()
        .iter()
        .map(|&s| -(s as i64))
        .chain(std::iter::once(1))
        .collect();
    let beta = edges
        .iter()
        .enumerate()
        .map(|(j, (u, v))| {
            lifted_inner_product(j + 1, u, &normal).min(lifted_inner_product(j + 1, v, &normal))
        })
        .collect();
    Ok(MixedCell {
        permutation: sigma.clone(),
        edge_indices,
        edges,
        normal,
        beta,
        is_fine: true,
        volume: 1u64 << sigma.fixed_points(),
    })
}

/// One mixed cell per permutation, built on demand.
pub fn mixed_cell_iter(n: usize) -> impl Iterator<Item = MixedCell> {
    (1..=n).permutations(n).map(move |images| {
        perm_to_mixed_cell(&Permutation(images), n).expect("permutations are valid")
    })
}

/// The mixed volume `Σ_σ 2^{Fix(σ)}`, streamed over permutations.
///
/// Each term is the volume of the cell [`perm_to_mixed_cell`] would build;
/// the cells themselves are not materialized.
pub fn bkk_stretched(n: usize) -> u64 {
    (1..=n)
        .permutations(n)
        .map(|images| {
            let fixed = images
                .iter()
                .enumerate()
                .filter(|(i, &s)| s == i + 1)
                .count();
            1u64 << fixed
        })
        .sum()
}

/// Mixed volume by inclusion-exclusion over Minkowski sums of the cubes.
///
/// The sum over `S ⊆ [n]` of the cubes is a box with side `|S| + [j ∈ S]`
/// along axis `j`.
pub fn bkk_oracle(n: usize) -> u64 {
    let total: i128 = (1u32..1 << n)
        .map(|mask| {
            let size = mask.count_ones() as i128;
            let vol: i128 = (0..n).map(|j| size + (mask >> j & 1) as i128).product();
            let sign = if (n as i128 - size) % 2 == 0 { 1 } else { -1 };
            sign * vol
        })
        .sum();
    total as u64
}

pub type IntMatrix = Vec<Vec<i64>>;

/// Row-style Hermite normal form: returns `(U, H)` with `U` unimodular,
/// `U · A = H`, `H` upper triangular with positive diagonal and entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &[Vec<i64>]) -> Result<(IntMatrix, IntMatrix)> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("HNF expects a square matrix".into()));
    }
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        // Euclid on the column below the diagonal
        loop {
            let pivot = (col..n)
                .filter(|&r| h[r][col] != 0)
                .min_by_key(|&r| h[r][col].abs());
            let Some(p) = pivot else {
                return Err(Error::SingularBinomial);
            };
            h.swap(col, p);
            u.swap(col, p);
            let mut done = true;
            for r in col + 1..n {
                if h[r][col] != 0 {
                    let q = h[r][col].div_euclid(h[col][col]);
                    row_sub(&mut h, r, col, q);
                    row_sub(&mut u, r, col, q);
                    if h[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[col][col] < 0 {
            h[col].iter_mut().for_each(|v| *v = -*v);
            u[col].iter_mut().for_each(|v| *v = -*v);
        }
        for r in 0..col {
            let q = h[r][col].div_euclid(h[col][col]);
            row_sub(&mut h, r, col, q);
            row_sub(&mut u, r, col, q);
        }
    }
    Ok((u, h))
}

/// `m[r] -= q * m[src]`
fn row_sub(m: &mut [Vec<i64>], r: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    let (a, b) = if r < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[r], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(r);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

fn monomial_value(x: &[C64], e: &[i64]) -> C64 {
    x.iter()
        .zip(e)
        .map(|(xi, &ei)| xi.powi(ei as i32))
        .product()
}

/// Torus solutions of `x^{D}` = `rhs` for a triangular `D`, enumerated by
/// choice of root branch per coordinate.
#[derive(Clone, Debug)]
pub struct BinomialSolutions {
    h: Vec<Vec<i64>>,
    rhs: Vec<C64>,
    counter: Vec<i64>,
    done: bool,
}

impl Iterator for BinomialSolutions {
    type Item = Vec<C64>;

    fn next(&mut self) -> Option<Vec<C64>> {
        if self.done {
            return None;
        }
        let n = self.h.len();
        let mut x = vec![C64::new(1.0, 0.0); n];
        for k in (0..n).rev() {
            let known: C64 = (k + 1..n).map(|i| x[i].powi(self.h[k][i] as i32)).product();
            let target = self.rhs[k] / known;
            let deg = self.h[k][k];
            let (r, theta) = target.to_polar();
            x[k] = C64::from_polar(
                r.powf(1.0 / deg as f64),
                (theta + std::f64::consts::TAU * self.counter[k] as f64) / deg as f64,
            );
        }
        self.done = true;
        for k in 0..n {
            self.counter[k] += 1;
            if self.counter[k] < self.h[k][k] {
                self.done = false;
                break;
            }
            self.counter[k] = 0;
        }
        Some(x)
    }
}

/// Solves `c_u x^{u_j} + c_v x^{v_j} = 0`, `j = 1..n`, for a fine cell.
///
/// `coeffs[j]` holds `(c_u, c_v)` for the edge `(u_j, v_j)`. Yields exactly
/// `cell.volume` solutions.
pub fn solve_binomial_cell(cell: &MixedCell, coeffs: &[(C64, C64)]) -> Result<BinomialSolutions> {
    let n = cell.edges.len();
    if coeffs.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: coeffs.len(),
        });
    }
    if !cell.is_fine {
        return Err(Error::InvalidArgument(
            "binomial solving needs a fine cell".into(),
        ));
    }
    if coeffs
        .iter()
        .any(|(a, b)| *a == C64::new(0.0, 0.0) || *b == C64::new(0.0, 0.0))
    {
        return Err(Error::InvalidArgument(
            "binomial coefficients must be nonzero".into(),
        ));
    }
    // x^{v - u} = -c_u / c_v
    let directions: Vec<Vec<i64>> = cell
        .edges
        .iter()
        .map(|(u, v)| {
            v.iter()
                .zip(u.iter())
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect()
        })
        .collect();
    let b: Vec<C64> = coeffs.iter().map(|(cu, cv)| -cu / cv).collect();
    let (u, h) = hermite_normal_form(&directions)?;
    let rhs = u.iter().map(|row| monomial_value(&b, row)).collect();
    Ok(BinomialSolutions {
        h,
        rhs,
        counter: vec![0; n],
        done: false,
    })
}

/// Coefficients of a system on the stretched-cube support: `coeffs[i][k]`
/// multiplies point `k` of support `i`.
pub fn stretched_system(n: usize, coeffs: &[Vec<C64>]) -> Result<PolySystem> {
    let support = stretched_cube_support(n)?;
    if coeffs.len() != n || coeffs.iter().any(|c| c.len() != 1 << n) {
        return Err(Error::Shape(format!(
            "expected {n} coefficient vectors of length {}",
            1 << n
        )));
    }
    let polys = support
        .sets()
        .iter()
        .zip(coeffs)
        .map(|(set, cs)| {
            Polynomial::new(
                n,
                0,
                set.iter().zip(cs).map(|(m, &c)| Term {
                    coeff: c,
                    monomial: m.clone(),
                    param_monomial: Monomial::one(0),
                }),
            )
        })
        .collect();
    PolySystem::new(polys, default_names("x", n), vec![])
}

/// Flattened binomial start solutions over all mixed cells.
pub struct PolyhedralStarts<C> {
    cells: C,
    coeffs: Vec<Vec<C64>>,
    current: Option<(MixedCell, BinomialSolutions)>,
    solves: usize,
}

impl<C> PolyhedralStarts<C> {
    /// Number of binomial systems solved so far.
    pub fn solves_performed(&self) -> usize {
        self.solves
    }
}

impl<C: Iterator<Item = MixedCell>> Iterator for PolyhedralStarts<C> {
    type Item = Result<(Vec<C64>, MixedCell)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some((cell, sols)) = &mut self.current {
                if let Some(x) = sols.next() {
                    return Some(Ok((x, cell.clone())));
                }
                self.current = None;
            }
            let cell = self.cells.next()?;
            let pairs: Vec<(C64, C64)> = cell
                .edge_indices
                .iter()
                .zip(&self.coeffs)
                .map(|(&(iu, iv), cs)| (cs[iu], cs[iv]))
                .collect();
            self.solves += 1;
            match solve_binomial_cell(&cell, &pairs) {
                Ok(sols) => self.current = Some((cell, sols)),
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Lazy start solutions of the binomial systems of every mixed cell, using
/// the system coefficients on each cell's edge endpoints.
pub fn polyhedral_start_iter(
    n: usize,
    coeffs: Vec<Vec<C64>>,
) -> Result<PolyhedralStarts<impl Iterator<Item = MixedCell>>> {
    if coeffs.len() != n || coeffs.iter().any(|c| c.len() != 1 << n) {
        return Err(Error::Shape(format!(
            "expected {n} coefficient vectors of length {}",
            1 << n
        )));
    }
    Ok(PolyhedralStarts {
        cells: mixed_cell_iter(n),
        coeffs,
        current: None,
        solves: 0,
    })
}
