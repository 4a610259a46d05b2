//! Homotopy iterators and their combinators.
//!
//! A [`ResultIterator`] pairs a homotopy and tracker settings with a
//! re-iterable source of start solutions and an optional [`Bitmask`].
//! Constructing one tracks nothing; each consumption walks the start
//! solutions in order and tracks them one at a time, skipping zero bits.
//! Iterators are multi-shot: consuming twice re-tracks, and because
//! [`track`] is deterministic both passes agree bit for bit.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::{Homotopy, CONCAT_TOLERANCE};
use crate::polysys::PolySystem;
use crate::startsys::{total_degree_start_iter, total_degree_system};
use crate::tracker::{track, PathResult, TrackOptions};
use crate::C64;

/// Counters that make laziness and memory use observable.
#[derive(Debug, Default)]
pub struct Instrumentation {
    paths_tracked: AtomicUsize,
    live_results: AtomicUsize,
    peak_live_results: AtomicUsize,
}

impl Instrumentation {
    pub fn new() -> Arc<Self> {
        Arc::new(Self::default())
    }

    pub fn paths_tracked(&self) -> usize {
        self.paths_tracked.load(Ordering::SeqCst)
    }

    /// Path results produced by an iterator and not yet dropped.
    pub fn live_results(&self) -> usize {
        self.live_results.load(Ordering::SeqCst)
    }

    pub fn peak_live_results(&self) -> usize {
        self.peak_live_results.load(Ordering::SeqCst)
    }

    /// Starts a new consumption session. Live results keep being counted.
    pub fn reset(&self) {
        self.paths_tracked.store(0, Ordering::SeqCst);
        self.peak_live_results
            .store(self.live_results(), Ordering::SeqCst);
    }

    fn record_track(&self) {
        self.paths_tracked.fetch_add(1, Ordering::SeqCst);
    }

    fn acquire(&self) {
        let now = self.live_results.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak_live_results.fetch_max(now, Ordering::SeqCst);
    }
}

/// Ties a [`PathResult`] to the live-result counter of its iterator.
pub(crate) struct LiveToken(Arc<Instrumentation>);

impl LiveToken {
    fn new(instr: &Arc<Instrumentation>) -> Self {
        instr.acquire();
        LiveToken(Arc::clone(instr))
    }
}

impl Clone for LiveToken {
    fn clone(&self) -> Self {
        LiveToken::new(&self.0)
    }
}

impl Drop for LiveToken {
    fn drop(&mut self) {
        self.0.live_results.fetch_sub(1, Ordering::SeqCst);
    }
}

impl PartialEq for LiveToken {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Debug for LiveToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LiveToken")
    }
}

/// A fixed-length bit vector stored least-significant bit first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Bitmask {
    len: usize,
    bytes: Vec<u8>,
}

impl Bitmask {
    pub fn zeros(len: usize) -> Self {
        Bitmask {
            len,
            bytes: vec![0; len.div_ceil(8)],
        }
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut mask = Bitmask::default();
        for b in bits {
            mask.push(b);
        }
        mask
    }

    /// Reads `len` bits; padding bits in the last byte must be zero.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Format(format!(
                "{} bitmask bytes cannot hold exactly {len} bits",
                bytes.len()
            )));
        }
        if !len.is_multiple_of(8) && bytes[len / 8] >> (len % 8) != 0 {
            return Err(Error::Format("nonzero bitmask padding".into()));
        }
        Ok(Bitmask {
            len,
            bytes: bytes.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.bytes[i / 8] >> (i % 8) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        if value {
            self.bytes[i / 8] |= 1 << (i % 8);
        } else {
            self.bytes[i / 8] &= !(1 << (i % 8));
        }
    }

    pub fn push(&mut self, value: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

impl fmt::Debug for Bitmask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        write!(f, "Bitmask({s})")
    }
}

pub type StartIter = Box<dyn Iterator<Item = Vec<C64>> + Send>;

/// A re-iterable source of start solutions.
#[derive(Clone)]
pub struct StartSolutions {
    make: Arc<dyn Fn() -> StartIter + Send + Sync>,
    label: String,
}

impl StartSolutions {
    pub fn from_fn(
        label: impl Into<String>,
        make: impl Fn() -> StartIter + Send + Sync + 'static,
    ) -> Self {
        StartSolutions {
            make: Arc::new(make),
            label: label.into(),
        }
    }

    pub fn from_vec(starts: Vec<Vec<C64>>) -> Self {
        let starts = Arc::new(starts);
        Self::from_fn("given", move || {
            let starts = Arc::clone(&starts);
            Box::new((0..starts.len()).map(move |i| starts[i].clone()))
        })
    }

    pub fn total_degree(degrees: Vec<u32>) -> Result<Self> {
        total_degree_start_iter(&degrees)?;
        Ok(Self::from_fn("total degree", move || {
            Box::new(total_degree_start_iter(&degrees).expect("degrees checked"))
        }))
    }

    /// Solutions of another homotopy iterator, tracked on demand.
    pub fn from_results(prior: ResultIterator) -> Self {
        Self::from_fn("result iterator", move || {
            Box::new(prior.iter().map(PathResult::into_solution))
        })
    }

    pub fn iter(&self) -> StartIter {
        (self.make)()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for StartSolutions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StartSolutions({})", self.label)
    }
}

struct Inner {
    homotopy: Homotopy,
    options: TrackOptions,
    starts: StartSolutions,
    bitmask: Option<Bitmask>,
    instrumentation: Arc<Instrumentation>,
}

/// A lazily evaluated set of path results.
#[derive(Clone)]
pub struct ResultIterator {
    inner: Arc<Inner>,
}

impl fmt::Debug for ResultIterator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResultIterator")
            .field("starts", &self.inner.starts)
            .field("bitmask", &self.inner.bitmask.as_ref().map(Bitmask::len))
            .finish()
    }
}

impl ResultIterator {
    pub fn new(homotopy: Homotopy, starts: StartSolutions, options: TrackOptions) -> Result<Self> {
        options.validate()?;
        Ok(ResultIterator {
            inner: Arc::new(Inner {
                homotopy,
                options,
                starts,
                bitmask: None,
                instrumentation: Instrumentation::new(),
            }),
        })
    }

    /// Attaches a bitmask; only start solutions with a one bit are tracked.
    pub fn with_bitmask(&self, bitmask: Bitmask) -> Result<Self> {
        if self.inner.bitmask.is_some() {
            return Err(Error::InvalidArgument(
                "iterator already has a bitmask".into(),
            ));
        }
        Ok(ResultIterator {
            inner: Arc::new(Inner {
                homotopy: self.inner.homotopy.clone(),
                options: self.inner.options.clone(),
                starts: self.inner.starts.clone(),
                bitmask: Some(bitmask),
                instrumentation: Arc::clone(&self.inner.instrumentation),
            }),
        })
    }

    pub fn homotopy(&self) -> &Homotopy {
        &self.inner.homotopy
    }

    pub fn options(&self) -> &TrackOptions {
        &self.inner.options
    }

    pub fn starts(&self) -> &StartSolutions {
        &self.inner.starts
    }

    pub fn bitmask(&self) -> Option<&Bitmask> {
        self.inner.bitmask.as_ref()
    }

    pub fn instrumentation(&self) -> &Arc<Instrumentation> {
        &self.inner.instrumentation
    }

    /// Starts a fresh pass over the path results.
    pub fn iter(&self) -> ResultIter {
        ResultIter {
            inner: Arc::clone(&self.inner),
            starts: self.inner.starts.iter(),
            index: 0,
        }
    }

    /// The endpoints, tracked on demand.
    pub fn solutions(&self) -> impl Iterator<Item = Vec<C64>> {
        self.iter().map(PathResult::into_solution)
    }
}

impl IntoIterator for &ResultIterator {
    type Item = PathResult;
    type IntoIter = ResultIter;

    fn into_iter(self) -> ResultIter {
        self.iter()
    }
}

/// One pass over a [`ResultIterator`].
pub struct ResultIter {
    inner: Arc<Inner>,
    starts: StartIter,
    index: usize,
}

impl Iterator for ResultIter {
    type Item = PathResult;

    fn next(&mut self) -> Option<PathResult> {
        loop {
            let start = self.starts.next()?;
            let i = self.index;
            self.index += 1;
            if let Some(mask) = &self.inner.bitmask {
                if i >= mask.len() {
                    return None;
                }
                if !mask.get(i) {
                    continue;
                }
            }
            let instr = &self.inner.instrumentation;
            instr.record_track();
            let mut result = track(&self.inner.homotopy, &start, &self.inner.options);
            result.live = Some(LiveToken::new(instr));
            return Some(result);
        }
    }
}

/// How the start solutions of [`solve_iter`] are obtained.
#[derive(Clone, Debug)]
pub enum StartKind {
    /// `(1 - t) F + γ t (x_i^{d_i} - 1)` from the roots of unity.
    TotalDegree { gamma: C64 },
    /// Parameter homotopy from `start_params` (with the given start
    /// solutions) to `target_params`.
    Parameter {
        start_params: Vec<C64>,
        target_params: Vec<C64>,
        starts: StartSolutions,
    },
    /// Any homotopy ending at `F` with its own start solutions.
    Given {
        homotopy: Homotopy,
        starts: StartSolutions,
    },
}

/// Sets up a homotopy iterator for `F`. Tracks nothing.
pub fn solve_iter(
    f: &PolySystem,
    start: StartKind,
    options: TrackOptions,
) -> Result<ResultIterator> {
    match start {
        StartKind::TotalDegree { gamma } => {
            if f.is_parameterized() {
                return Err(Error::Shape(
                    "total-degree start needs a parameter-free system; specialize it first".into(),
                ));
            }
            let degrees = f.degrees();
            if degrees.contains(&0) {
                return Err(Error::Shape(
                    "total-degree start needs every degree >= 1".into(),
                ));
            }
            let g = total_degree_system(&degrees, C64::new(1.0, 0.0))?;
            let h = Homotopy::straight_line(f.clone(), g, gamma)?;
            ResultIterator::new(h, StartSolutions::total_degree(degrees)?, options)
        }
        StartKind::Parameter {
            start_params,
            target_params,
            starts,
        } => {
            let h = Homotopy::parameter(f.clone(), start_params, target_params)?;
            ResultIterator::new(h, starts, options)
        }
        StartKind::Given { homotopy, starts } => {
            if homotopy.nvars() != f.nvars() {
                return Err(Error::Shape(
                    "homotopy and system disagree on variables".into(),
                ));
            }
            ResultIterator::new(homotopy, starts, options)
        }
    }
}

/// Pushes the solutions of `prior` through `next`, which must start where
/// `prior` ends. Shares the instrumentation of `prior`.
pub fn compose(prior: &ResultIterator, next: Homotopy) -> Result<ResultIterator> {
    let gap = prior
        .homotopy()
        .target_system()
        .coefficient_distance(&next.start_system())
        .ok_or_else(|| Error::Shape("composed homotopies have different shapes".into()))?;
    if gap > CONCAT_TOLERANCE {
        return Err(Error::Shape(format!(
            "prior target and next start differ by {gap:e} coefficientwise"
        )));
    }
    Ok(ResultIterator {
        inner: Arc::new(Inner {
            homotopy: next,
            options: prior.options().clone(),
            starts: StartSolutions::from_results(prior.clone()),
            bitmask: None,
            instrumentation: Arc::clone(prior.instrumentation()),
        }),
    })
}

/// Eagerly tracks every path once and records `pred` as a bitmask.
pub fn bitmask_filter(
    pred: impl Fn(&PathResult) -> bool,
    it: &ResultIterator,
) -> Result<ResultIterator> {
    if it.bitmask().is_some() {
        return Err(Error::InvalidArgument(
            "iterator already has a bitmask".into(),
        ));
    }
    let mask = Bitmask::from_bools(it.iter().map(|r| pred(&r)));
    it.with_bitmask(mask)
}

pub fn map_lazy<I: IntoIterator, B>(f: impl FnMut(I::Item) -> B, it: I) -> impl Iterator<Item = B> {
    it.into_iter().map(f)
}

pub fn filter_lazy<I: IntoIterator>(
    pred: impl FnMut(&I::Item) -> bool,
    it: I,
) -> impl Iterator<Item = I::Item> {
    it.into_iter().filter(pred)
}

/// Left fold holding one element at a time.
pub fn accumulate<I: IntoIterator, A>(f: impl FnMut(A, I::Item) -> A, it: I, init: A) -> A {
    it.into_iter().fold(init, f)
}

pub fn count<I: IntoIterator>(it: I) -> usize {
    accumulate(|c, _| c + 1, it, 0)
}

pub fn conditional_count<I: IntoIterator>(mut pred: impl FnMut(&I::Item) -> bool, it: I) -> usize {
    accumulate(|c, x| c + usize::from(pred(&x)), it, 0)
}

/// Coordinatewise sum; the trace of a solution set. Empty input gives an
/// empty vector.
pub fn sum_vectors<I: IntoIterator<Item = Vec<C64>>>(it: I) -> Vec<C64> {
    accumulate(
        |mut acc: Vec<C64>, v: Vec<C64>| {
            if acc.is_empty() {
                return v;
            }
            acc.iter_mut().zip(&v).for_each(|(a, b)| *a += b);
            acc
        },
        it,
        Vec::new(),
    )
}

/// Largest value of `f` over the elements, `None` when empty.
pub fn max_by<I: IntoIterator, V: PartialOrd>(
    mut f: impl FnMut(&I::Item) -> V,
    it: I,
) -> Option<V> {
    accumulate(
        |best: Option<V>, x| {
            let v = f(&x);
            match best {
                Some(b) if v.partial_cmp(&b) != Some(std::cmp::Ordering::Greater) => Some(b),
                _ => Some(v),
            }
        },
        it,
        None,
    )
}

/// Stops at the first element satisfying `pred`.
pub fn any_lazy<I: IntoIterator>(pred: impl FnMut(I::Item) -> bool, it: I) -> bool {
    it.into_iter().any(pred)
}

/// The first element satisfying `pred`; nothing after it is consumed.
pub fn first_where<I: IntoIterator>(pred: impl FnMut(&I::Item) -> bool, it: I) -> Option<I::Item> {
    it.into_iter().find(pred)
}

pub fn flatten<I>(it: I) -> impl Iterator<Item = <I::Item as IntoIterator>::Item>
where
    I: IntoIterator,
    I::Item: IntoIterator,
{
    it.into_iter().flatten()
}

/// All pairs, the second iterator restarting for each element of the first.
pub fn product<I, J>(a: I, b: J) -> impl Iterator<Item = (I::Item, J::Item)>
where
    I: IntoIterator,
    I::Item: Clone,
    J: IntoIterator,
    J::IntoIter: Clone,
{
    let b = b.into_iter();
    a.into_iter()
        .flat_map(move |x| b.clone().map(move |y| (x.clone(), y)))
}

pub fn zip<I: IntoIterator, J: IntoIterator>(
    a: I,
    b: J,
) -> impl Iterator<Item = (I::Item, J::Item)> {
    a.into_iter().zip(b)
}
