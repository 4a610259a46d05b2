//! Sparse multivariate complex polynomials and square polynomial systems.
//!
//! A [`Polynomial`] lives in `n` variables and, optionally, `k` parameters.
//! Each term carries an exponent vector for the variables and one for the
//! parameters, so a parameterized coefficient is simply the sum of the terms
//! sharing a variable monomial. Terms are kept in graded-lexicographic order
//! (highest first) with duplicates merged and exact zeros removed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::C64;

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Deref for Monomial {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(v: Vec<u32>) -> Self {
        Monomial(v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One term `coeff * x^monomial * p^param_monomial`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: C64,
    pub monomial: Monomial,
    pub param_monomial: Monomial,
}

type TermKey = (Monomial, Monomial);

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    nparams: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    /// Builds a polynomial, merging duplicate monomials and dropping zeros.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn new(nvars: usize, nparams: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut map: BTreeMap<TermKey, C64> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.monomial.len(), nvars, "monomial length");
            assert_eq!(t.param_monomial.len(), nparams, "parameter monomial length");
            *map.entry((t.monomial, t.param_monomial))
                .or_insert(C64::new(0.0, 0.0)) += t.coeff;
        }
        Self::from_map(nvars, nparams, map)
    }

    fn from_map(nvars: usize, nparams: usize, map: BTreeMap<TermKey, C64>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| *c != C64::new(0.0, 0.0))
            .map(|((monomial, param_monomial), coeff)| Term {
                coeff,
                monomial,
                param_monomial,
            })
            .collect();
        Polynomial {
            nvars,
            nparams,
            terms,
        }
    }

    fn to_map(&self) -> BTreeMap<TermKey, C64> {
        self.terms
            .iter()
            .map(|t| ((t.monomial.clone(), t.param_monomial.clone()), t.coeff))
            .collect()
    }

    pub fn zero(nvars: usize, nparams: usize) -> Self {
        Polynomial {
            nvars,
            nparams,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: C64, nvars: usize, nparams: usize) -> Self {
        Self::new(
            nvars,
            nparams,
            [Term {
                coeff: c,
                monomial: Monomial::one(nvars),
                param_monomial: Monomial::one(nparams),
            }],
        )
    }

    /// The variable `x_i`.
    pub fn variable(i: usize, nvars: usize, nparams: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::new(
            nvars,
            nparams,
            [Term {
                coeff: C64::new(1.0, 0.0),
                monomial: Monomial(e),
                param_monomial: Monomial::one(nparams),
            }],
        )
    }

    /// The parameter `p_k`.
    pub fn parameter(k: usize, nvars: usize, nparams: usize) -> Self {
        let mut e = vec![0; nparams];
        e[k] = 1;
        Self::new(
            nvars,
            nparams,
            [Term {
                coeff: C64::new(1.0, 0.0),
                monomial: Monomial::one(nvars),
                param_monomial: Monomial(e),
            }],
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in the variables; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.monomial.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, s: C64) -> Polynomial {
        Polynomial::new(
            self.nvars,
            self.nparams,
            self.terms.iter().map(|t| Term {
                coeff: t.coeff * s,
                ..t.clone()
            }),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(C64::new(1.0, 0.0), self.nvars, self.nparams);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, x: &[C64], p: &[C64]) -> C64 {
        let xp = PowerTable::new(x, &self.max_exponents(|t| &t.monomial, self.nvars));
        let pp = PowerTable::new(p, &self.max_exponents(|t| &t.param_monomial, self.nparams));
        self.terms
            .iter()
            .map(|t| t.coeff * xp.monomial(&t.monomial) * pp.monomial(&t.param_monomial))
            .sum()
    }

    /// Substitutes parameter values, leaving a parameter-free polynomial.
    pub fn specialize(&self, p: &[C64]) -> Polynomial {
        let pp = PowerTable::new(p, &self.max_exponents(|t| &t.param_monomial, self.nparams));
        Polynomial::new(
            self.nvars,
            0,
            self.terms.iter().map(|t| Term {
                coeff: t.coeff * pp.monomial(&t.param_monomial),
                monomial: t.monomial.clone(),
                param_monomial: Monomial::one(0),
            }),
        )
    }

    fn max_exponents(&self, pick: impl Fn(&Term) -> &Monomial, len: usize) -> Vec<u32> {
        let mut m = vec![0; len];
        for t in &self.terms {
            for (mi, &e) in m.iter_mut().zip(pick(t).iter()) {
                *mi = (*mi).max(e);
            }
        }
        m
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(
            (self.nvars, self.nparams),
            (other.nvars, other.nparams),
            "polynomials live in different rings"
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut map = self.to_map();
        for t in &rhs.terms {
            *map.entry((t.monomial.clone(), t.param_monomial.clone()))
                .or_insert(C64::new(0.0, 0.0)) += t.coeff;
        }
        Polynomial::from_map(self.nvars, self.nparams, map)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut map: BTreeMap<TermKey, C64> = BTreeMap::new();
        for a in &self.terms {
            for b in &rhs.terms {
                *map.entry((
                    a.monomial.mul(&b.monomial),
                    a.param_monomial.mul(&b.param_monomial),
                ))
                .or_insert(C64::new(0.0, 0.0)) += a.coeff * b.coeff;
            }
        }
        Polynomial::from_map(self.nvars, self.nparams, map)
    }
}

/// Cached integer powers of each coordinate of a point.
struct PowerTable {
    pows: Vec<Vec<C64>>,
}

impl PowerTable {
    fn new(x: &[C64], max_exp: &[u32]) -> Self {
        let pows = x
            .iter()
            .zip(max_exp)
            .map(|(&xi, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                let mut acc = C64::new(1.0, 0.0);
                row.push(acc);
                for _ in 0..m {
                    acc *= xi;
                    row.push(acc);
                }
                row
            })
            .collect();
        PowerTable { pows }
    }

    #[inline]
    fn monomial(&self, e: &[u32]) -> C64 {
        e.iter()
            .zip(&self.pows)
            .filter(|(&ei, _)| ei > 0)
            .map(|(&ei, row)| row[ei as usize])
            .product()
    }

    /// Gradient of `x^e` with respect to every coordinate.
    fn monomial_gradient(&self, e: &[u32], out: &mut [C64]) {
        for (j, o) in out.iter_mut().enumerate() {
            if e[j] == 0 {
                *o = C64::new(0.0, 0.0);
                continue;
            }
            let mut v = C64::new(e[j] as f64, 0.0) * self.pows[j][e[j] as usize - 1];
            for (i, &ei) in e.iter().enumerate() {
                if i != j && ei > 0 {
                    v *= self.pows[i][ei as usize];
                }
            }
            *o = v;
        }
    }
}

/// Per-equation monomial supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    nvars: usize,
    sets: Vec<Vec<Monomial>>,
}

impl Support {
    pub fn new(nvars: usize, sets: Vec<Vec<Monomial>>) -> Result<Self> {
        for (i, set) in sets.iter().enumerate() {
            if let Some(m) = set.iter().find(|m| m.len() != nvars) {
                return Err(Error::Shape(format!(
                    "monomial {:?} in support {} has length {}, expected {}",
                    &m[..],
                    i,
                    m.len(),
                    nvars
                )));
            }
            let mut sorted = set.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != set.len() {
                return Err(Error::Shape(format!("support {i} has repeated monomials")));
            }
        }
        Ok(Support { nvars, sets })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn sets(&self) -> &[Vec<Monomial>] {
        &self.sets
    }

    /// Total number of monomials, i.e. the length of a coefficient vector.
    pub fn coefficient_count(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// The system whose `i`-th polynomial pairs `sets[i]` with consecutive
    /// entries of `coeffs`.
    pub fn system_with(&self, coeffs: &[C64]) -> Result<PolySystem> {
        if coeffs.len() != self.coefficient_count() {
            return Err(Error::Dimension {
                expected: self.coefficient_count(),
                got: coeffs.len(),
            });
        }
        let mut it = coeffs.iter();
        let polys = self
            .sets
            .iter()
            .map(|set| {
                Polynomial::new(
                    self.nvars,
                    0,
                    set.iter().zip(&mut it).map(|(m, &c)| Term {
                        coeff: c,
                        monomial: m.clone(),
                        param_monomial: Monomial::one(0),
                    }),
                )
            })
            .collect();
        PolySystem::new(polys, default_names("x", self.nvars), vec![])
    }
}

pub(crate) fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// A square polynomial system, possibly depending on parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    polynomials: Vec<Polynomial>,
    variables: Vec<String>,
    parameters: Vec<String>,
    max_exp: Vec<u32>,
    max_param_exp: Vec<u32>,
}

impl PolySystem {
    pub fn new(
        polynomials: Vec<Polynomial>,
        variables: Vec<String>,
        parameters: Vec<String>,
    ) -> Result<Self> {
        let (n, k) = (variables.len(), parameters.len());
        if polynomials.is_empty() {
            return Err(Error::Shape("system has no polynomials".into()));
        }
        if polynomials.len() != n {
            return Err(Error::Shape(format!(
                "system is not square: {} equations in {} variables",
                polynomials.len(),
                n
            )));
        }
        if let Some(i) = polynomials
            .iter()
            .position(|f| f.nvars != n || f.nparams != k)
        {
            return Err(Error::Shape(format!(
                "polynomial {i} lives in a ring with {} variables and {} parameters",
                polynomials[i].nvars, polynomials[i].nparams
            )));
        }
        let mut max_exp = vec![0; n];
        let mut max_param_exp = vec![0; k];
        for t in polynomials.iter().flat_map(|f| &f.terms) {
            for (m, &e) in max_exp.iter_mut().zip(t.monomial.iter()) {
                *m = (*m).max(e);
            }
            for (m, &e) in max_param_exp.iter_mut().zip(t.param_monomial.iter()) {
                *m = (*m).max(e);
            }
        }
        Ok(PolySystem {
            polynomials,
            variables,
            parameters,
            max_exp,
            max_param_exp,
        })
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polynomials
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn nparams(&self) -> usize {
        self.parameters.len()
    }

    pub fn is_parameterized(&self) -> bool {
        !self.parameters.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polynomials.iter().map(Polynomial::degree).collect()
    }

    fn check_point(&self, x: &[C64], p: Option<&[C64]>) -> Result<()> {
        if x.len() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                got: x.len(),
            });
        }
        let got = p.map_or(0, <[C64]>::len);
        if got != self.nparams() || (p.is_some() && !self.is_parameterized()) {
            return Err(Error::Dimension {
                expected: self.nparams(),
                got,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[C64], p: Option<&[C64]>) -> Result<Vec<C64>> {
        self.check_point(x, p)?;
        Ok(self.eval_raw(x, p.unwrap_or(&[])))
    }

    pub fn jacobian(&self, x: &[C64], p: Option<&[C64]>) -> Result<CMatrix> {
        self.check_point(x, p)?;
        Ok(self.eval_jacobian_raw(x, p.unwrap_or(&[])).1)
    }

    pub(crate) fn eval_raw(&self, x: &[C64], p: &[C64]) -> Vec<C64> {
        let xp = PowerTable::new(x, &self.max_exp);
        let pp = PowerTable::new(p, &self.max_param_exp);
        self.polynomials
            .iter()
            .map(|f| {
                f.terms
                    .iter()
                    .map(|t| t.coeff * pp.monomial(&t.param_monomial) * xp.monomial(&t.monomial))
                    .sum()
            })
            .collect()
    }

    /// Values and variable Jacobian in one pass.
    pub(crate) fn eval_jacobian_raw(&self, x: &[C64], p: &[C64]) -> (Vec<C64>, CMatrix) {
        let n = self.nvars();
        let xp = PowerTable::new(x, &self.max_exp);
        let pp = PowerTable::new(p, &self.max_param_exp);
        let mut values = vec![C64::new(0.0, 0.0); self.polynomials.len()];
        let mut jac = CMatrix::zeros(self.polynomials.len(), n);
        let mut grad = vec![C64::new(0.0, 0.0); n];
        for (i, f) in self.polynomials.iter().enumerate() {
            for t in &f.terms {
                let c = t.coeff * pp.monomial(&t.param_monomial);
                values[i] += c * xp.monomial(&t.monomial);
                xp.monomial_gradient(&t.monomial, &mut grad);
                for (j, g) in grad.iter().enumerate() {
                    jac[(i, j)] += c * g;
                }
            }
        }
        (values, jac)
    }

    /// Jacobian with respect to the parameters.
    pub(crate) fn param_jacobian_raw(&self, x: &[C64], p: &[C64]) -> CMatrix {
        let k = self.nparams();
        let xp = PowerTable::new(x, &self.max_exp);
        let pp = PowerTable::new(p, &self.max_param_exp);
        let mut jac = CMatrix::zeros(self.polynomials.len(), k);
        let mut grad = vec![C64::new(0.0, 0.0); k];
        for (i, f) in self.polynomials.iter().enumerate() {
            for t in &f.terms {
                let c = t.coeff * xp.monomial(&t.monomial);
                pp.monomial_gradient(&t.param_monomial, &mut grad);
                for (j, g) in grad.iter().enumerate() {
                    jac[(i, j)] += c * g;
                }
            }
        }
        jac
    }

    /// Fixes the parameters, returning a parameter-free system.
    pub fn specialize(&self, p: &[C64]) -> Result<PolySystem> {
        if !self.is_parameterized() {
            return Err(Error::InvalidArgument(
                "cannot specialize a parameter-free system".into(),
            ));
        }
        if p.len() != self.nparams() {
            return Err(Error::Dimension {
                expected: self.nparams(),
                got: p.len(),
            });
        }
        PolySystem::new(
            self.polynomials.iter().map(|f| f.specialize(p)).collect(),
            self.variables.clone(),
            vec![],
        )
    }

    pub fn scale(&self, s: C64) -> PolySystem {
        PolySystem::new(
            self.polynomials.iter().map(|f| f.scale(s)).collect(),
            self.variables.clone(),
            self.parameters.clone(),
        )
        .expect("scaling preserves shape")
    }

    /// Largest coefficient difference between two systems of the same shape,
    /// treating absent terms as zero. `None` when the shapes differ.
    pub fn coefficient_distance(&self, other: &PolySystem) -> Option<f64> {
        if self.nvars() != other.nvars()
            || self.nparams() != other.nparams()
            || self.polynomials.len() != other.polynomials.len()
        {
            return None;
        }
        let d = self
            .polynomials
            .iter()
            .zip(&other.polynomials)
            .map(|(a, b)| {
                (a - b)
                    .terms
                    .iter()
                    .map(|t| t.coeff.norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        Some(d)
    }

    /// Monomial support of each equation.
    pub fn support(&self) -> Support {
        let sets = self
            .polynomials
            .iter()
            .map(|f| {
                let mut ms: Vec<Monomial> = f.terms.iter().map(|t| t.monomial.clone()).collect();
                ms.dedup();
                ms
            })
            .collect();
        Support {
            nvars: self.nvars(),
            sets,
        }
    }

    pub fn parse(text: &str) -> Result<PolySystem> {
        parse_system(text)
    }

    pub fn to_json(&self) -> String {
        serialize_system(self)
    }

    pub(crate) fn to_json_value(&self) -> SystemJson {
        SystemJson {
            variables: self.variables.clone(),
            parameters: self.parameters.clone(),
            polynomials: self
                .polynomials
                .iter()
                .map(|f| {
                    f.terms
                        .iter()
                        .map(|t| TermJson {
                            c: [t.coeff.re, t.coeff.im],
                            e: t.monomial.to_vec(),
                            pe: self.is_parameterized().then(|| t.param_monomial.to_vec()),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, poly) in self.polynomials.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            if poly.is_zero() {
                write!(f, "0")?;
            }
            for (j, t) in poly.terms.iter().enumerate() {
                if j > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({}{:+}i)", t.coeff.re, t.coeff.im)?;
                let names = self.parameters.iter().zip(t.param_monomial.iter());
                for (name, &e) in self.variables.iter().zip(t.monomial.iter()).chain(names) {
                    match e {
                        0 => {}
                        1 => write!(f, "*{name}")?,
                        _ => write!(f, "*{name}^{e}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TermJson {
    c: [f64; 2],
    e: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pe: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SystemJson {
    variables: Vec<String>,
    #[serde(default)]
    parameters: Vec<String>,
    polynomials: Vec<Vec<TermJson>>,
}

impl SystemJson {
    pub(crate) fn into_system(self) -> Result<PolySystem> {
        let n = self.variables.len();
        let k = self.parameters.len();
        let err = |location: String, message: String| Error::Parse { location, message };
        check_names(&self.variables, "variable")?;
        check_names(&self.parameters, "parameter")?;
        if self.polynomials.is_empty() {
            return Err(err("polynomials".into(), "empty polynomial list".into()));
        }
        if self.polynomials.len() != n {
            return Err(err(
                "polynomials".into(),
                format!(
                    "non-square system: {} polynomials in {} variables",
                    self.polynomials.len(),
                    n
                ),
            ));
        }
        let mut polys = Vec::with_capacity(n);
        for (i, terms) in self.polynomials.into_iter().enumerate() {
            let mut out = Vec::with_capacity(terms.len());
            for (j, t) in terms.into_iter().enumerate() {
                let loc = || format!("polynomials[{i}][{j}]");
                if t.e.len() != n {
                    return Err(err(
                        loc(),
                        format!(
                            "exponent vector has {} entries but {} variables are declared",
                            t.e.len(),
                            n
                        ),
                    ));
                }
                let pe = match t.pe {
                    Some(pe) if pe.len() != k => {
                        return Err(err(
                            loc(),
                            format!(
                                "parameter exponent vector has {} entries but {} parameters are declared",
                                pe.len(),
                                k
                            ),
                        ))
                    }
                    Some(pe) => pe,
                    None => vec![0; k],
                };
                if !(t.c[0].is_finite() && t.c[1].is_finite()) {
                    return Err(err(loc(), "non-finite coefficient".into()));
                }
                out.push(Term {
                    coeff: C64::new(t.c[0], t.c[1]),
                    monomial: Monomial(t.e),
                    param_monomial: Monomial(pe),
                });
            }
            polys.push(Polynomial::new(n, k, out));
        }
        PolySystem::new(polys, self.variables, self.parameters)
    }
}

fn check_names(names: &[String], what: &str) -> Result<()> {
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(Error::Parse {
                location: format!("{what}s[{i}]"),
                message: format!("duplicate {what} name {name:?}"),
            });
        }
    }
    Ok(())
}

/// Parses the JSON system format.
pub fn parse_system(text: &str) -> Result<PolySystem> {
    let raw: SystemJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    raw.into_system()
}

pub fn serialize_system(system: &PolySystem) -> String {
    serde_json::to_string(&system.to_json_value()).expect("system serialization cannot fail")
}

/// The cyclic n-roots system in variables `x0..x{n-1}`.
pub fn cyclic_system(n: usize) -> Result<PolySystem> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "cyclic system needs n >= 2, got {n}"
        )));
    }
    let one = C64::new(1.0, 0.0);
    let mut polys = Vec::with_capacity(n);
    for len in 1..n {
        let terms = (0..n).map(|start| {
            let mut e = vec![0; n];
            for offset in 0..len {
                e[(start + offset) % n] = 1;
            }
            Term {
                coeff: one,
                monomial: Monomial(e),
                param_monomial: Monomial::one(0),
            }
        });
        polys.push(Polynomial::new(n, 0, terms));
    }
    polys.push(Polynomial::new(
        n,
        0,
        [
            Term {
                coeff: one,
                monomial: Monomial(vec![1; n]),
                param_monomial: Monomial::one(0),
            },
            Term {
                coeff: -one,
                monomial: Monomial::one(n),
                param_monomial: Monomial::one(0),
            },
        ],
    ));
    PolySystem::new(polys, (0..n).map(|i| format!("x{i}")).collect(), vec![])
}
