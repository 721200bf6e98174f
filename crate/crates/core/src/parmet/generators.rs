use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, ToPrimitive};

use crate::corpus::l_n;
use crate::diagonals::Diagonals;
use crate::enriched::EnrichedCategory;
use crate::error::{QcatError, Result};
use crate::quantaloid::Arrow;

use super::{ExtValue, PartialMetricSpace};

/// Words over an alphabet with `p(x, y) = 2^{-k}`, `k` the first 1-based
/// position where `x` and `y` disagree; a word disagrees with itself just past its end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSpace {
    pub alphabet: Vec<char>,
}

impl WordSpace {
    pub fn new(alphabet: &[char]) -> Self {
        WordSpace {
            alphabet: alphabet.to_vec(),
        }
    }

    pub fn distance(x: &str, y: &str) -> ExtValue {
        let common = x.chars().zip(y.chars()).take_while(|(a, b)| a == b).count();
        ExtValue::dyadic(common as u32 + 1)
    }

    /// All nonempty words up to `max_len`, shortlex order.
    pub fn words(&self, max_len: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| self.alphabet.iter().map(move |c| format!("{w}{c}")))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

/// The finite word space on all nonempty words of length at most `max_len`.
pub fn word_space(alphabet: &[char], max_len: usize) -> PartialMetricSpace {
    let words = WordSpace::new(alphabet).words(max_len);
    PartialMetricSpace::new(words.clone(), |y, x| WordSpace::distance(&words[y], &words[x]))
        .expect("words are distinct")
}

/// The given self-distances with `p(a, b) = a ∨ b`.
pub fn terminal_sample(values: &[ExtValue]) -> Result<PartialMetricSpace> {
    let names = values.iter().map(|v| v.to_string()).collect();
    PartialMetricSpace::new(names, |y, x| values[y].join(&values[x]))
}

/// Two points `a, b` with `p(a,a) = 0`, `p(b,b) = 1`, `p(a,b) = p(b,a) = 1`.
pub fn ab_space() -> PartialMetricSpace {
    let v = [[0, 1], [1, 1]];
    PartialMetricSpace::new(vec!["a".into(), "b".into()], |y, x| ExtValue::int(v[y][x])).unwrap()
}

/// The two-point ordinary metric space at distance `1`.
pub fn two_point_metric() -> PartialMetricSpace {
    PartialMetricSpace::new(vec!["a".into(), "b".into()], |y, x| {
        ExtValue::int(if x == y { 0 } else { 1 })
    })
    .unwrap()
}

/// Two points with every distance equal to `1`.
pub fn all_ones() -> PartialMetricSpace {
    PartialMetricSpace::new(vec!["a".into(), "b".into()], |_, _| ExtValue::int(1)).unwrap()
}

/// A single point at distance `∞` from itself.
pub fn infinite_point() -> PartialMetricSpace {
    PartialMetricSpace::new(vec!["o".into()], |_, _| ExtValue::Inf).unwrap()
}

fn diagonal_cache() -> &'static Mutex<HashMap<usize, Arc<Diagonals>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Diagonals>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `D(L_n)`, built once per `n`.
pub fn diagonals_of_chain(n: usize) -> Arc<Diagonals> {
    let mut cache = diagonal_cache().lock().expect("cache lock");
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(Diagonals::new(l_n(n))))
        .clone()
}

fn scale(v: &ExtValue, den: u64, top: u64) -> Result<usize> {
    match v {
        ExtValue::Inf => Ok(top as usize),
        ExtValue::Fin(r) => {
            let s: BigRational = r * BigRational::from_integer(BigInt::from(den));
            if !s.is_integer() {
                return Err(QcatError::InvalidArgument(format!(
                    "distance {v} is not a multiple of 1/{den}"
                )));
            }
            match s.to_integer().to_u64() {
                Some(k) if k < top => Ok(k as usize),
                _ => Err(QcatError::InvalidArgument(format!(
                    "finite distance {v} reaches the cap"
                ))),
            }
        }
    }
}

/// The `D(L_{cap·den+1})`-category whose homs are the distances scaled by
/// `den`; the top element `cap·den` of the chain stands for `∞`.
pub fn discretize_to_category(
    x: &PartialMetricSpace,
    den: u64,
    cap: u64,
) -> Result<(Arc<Diagonals>, EnrichedCategory)> {
    if den == 0 || cap == 0 {
        return Err(QcatError::InvalidArgument(
            "denominator and cap must be positive".into(),
        ));
    }
    let top = cap * den;
    let n = top as usize + 1;
    let scaled = x
        .table()
        .iter()
        .map(|v| scale(v, den, top))
        .collect::<Result<Vec<_>>>()?;
    let dg = diagonals_of_chain(n);
    let m = x.len();
    let arrow = |k: usize| Arrow::new(0, 0, k);
    let types: Vec<usize> = (0..m).map(|a| dg.object(arrow(scaled[a * m + a]))).collect();
    let mut homs = Vec::with_capacity(m * m);
    for y in 0..m {
        for a in 0..m {
            let d = dg
                .arrow(
                    arrow(scaled[a * m + a]),
                    arrow(scaled[y * m + y]),
                    arrow(scaled[y * m + a]),
                )
                .ok_or_else(|| {
                    QcatError::InvalidArgument(format!(
                        "p({},{}) is not a diagonal between the types",
                        x.name(y),
                        x.name(a)
                    ))
                })?;
            homs.push(d.elem);
        }
    }
    let c = EnrichedCategory::from_table(dg.quantaloid.clone(), x.names().to_vec(), types, homs)?;
    Ok((dg, c))
}
