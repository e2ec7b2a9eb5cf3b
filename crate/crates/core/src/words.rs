//! Noncommutative words in two letters.
//!
//! Expanding `(X + Y)^p` produces `2^p` binary words. Up to cyclic rotation,
//! which the trace ignores, each word that uses both letters is an
//! alternating word `X^{l_1} Y^{m_1} ⋯ X^{l_r} Y^{m_r}`; the two remaining
//! words are pure powers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{eigh, EigenDecomposition, Matrix, SymMatrix};
use crate::sum::CompensatedSum;

/// Largest `p` for which the `2^p` binary words of `(X + Y)^p` are enumerated.
pub const WORD_BUDGET: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "X",
            Letter::Y => "Y",
        })
    }
}

/// Nonempty word over `{X, Y}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<Letter>);

impl BinaryWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidParameter(
                "binary word must be nonempty".into(),
            ));
        }
        Ok(BinaryWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Word starting at position `k` and wrapping around.
    pub fn rotated(&self, k: usize) -> BinaryWord {
        let k = k % self.0.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        BinaryWord(letters)
    }

    pub fn is_rotation_of(&self, other: &BinaryWord) -> bool {
        self.len() == other.len() && (0..self.len()).any(|k| &other.rotated(k) == self)
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{l}"))
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(Letter::X),
                'Y' | 'y' => Ok(Letter::Y),
                other => Err(Error::InvalidParameter(format!(
                    "unexpected letter {other:?} in word"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryWord::new(letters)
    }
}

fn check_word_budget(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "word length must be at least 1".into(),
        ));
    }
    if p > WORD_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "binary word length",
            requested: p as u128,
            limit: WORD_BUDGET as u128,
        });
    }
    Ok(())
}

/// Streams all `2^p` words of length `p` in lexicographic order (`X < Y`).
pub fn binary_words(p: usize) -> Result<impl Iterator<Item = BinaryWord>> {
    check_word_budget(p)?;
    Ok((0u64..1 << p).map(move |bits| {
        BinaryWord(
            (0..p)
                .map(|i| {
                    if bits >> (p - 1 - i) & 1 == 0 {
                        Letter::X
                    } else {
                        Letter::Y
                    }
                })
                .collect(),
        )
    }))
}

pub fn enumerate_binary_words(p: usize) -> Result<Vec<BinaryWord>> {
    Ok(binary_words(p)?.collect())
}

/// Exponent pairs `(l_i, m_i)` of `X^{l_1} Y^{m_1} ⋯ X^{l_r} Y^{m_r}`, all `≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingWord {
    pairs: Vec<(f64, f64)>,
    l: f64,
    m: f64,
}

impl AlternatingWord {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidExponent(
                "alternating word needs at least one pair".into(),
            ));
        }
        if let Some(&(l, m)) = pairs
            .iter()
            .find(|(l, m)| !(l.is_finite() && m.is_finite() && *l >= 1.0 && *m >= 1.0))
        {
            return Err(Error::InvalidExponent(format!(
                "exponent pair ({l}, {m}) must have both entries finite and >= 1"
            )));
        }
        let l = pairs.iter().map(|p| p.0).sum();
        let m = pairs.iter().map(|p| p.1).sum();
        Ok(AlternatingWord { pairs, l, m })
    }

    pub fn from_integers(pairs: &[(u32, u32)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(l, m)| (l as f64, m as f64)).collect())
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Number of pairs `r`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total `X` degree `l = Σ l_i`.
    pub fn l(&self) -> f64 {
        self.l
    }

    /// Total `Y` degree `m = Σ m_i`.
    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn degree(&self) -> f64 {
        self.l + self.m
    }

    /// Cyclic rotation of the pair list by `k` pairs.
    pub fn rotated(&self, k: usize) -> AlternatingWord {
        let k = k % self.pairs.len();
        let mut pairs = self.pairs[k..].to_vec();
        pairs.extend_from_slice(&self.pairs[..k]);
        AlternatingWord {
            pairs,
            l: self.l,
            m: self.m,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.pairs
            .iter()
            .all(|&(l, m)| l.fract() == 0.0 && m.fract() == 0.0)
    }

    /// Expands integer exponents back into letters; `None` for fractional words.
    pub fn to_binary_word(&self) -> Option<BinaryWord> {
        if !self.is_integral() {
            return None;
        }
        let mut letters = Vec::new();
        for &(l, m) in &self.pairs {
            letters.extend(std::iter::repeat_n(Letter::X, l as usize));
            letters.extend(std::iter::repeat_n(Letter::Y, m as usize));
        }
        Some(BinaryWord(letters))
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(l, m)| format!("({l},{m})"))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Canonical form of a binary word under cyclic rotation.
#[derive(Debug, Clone, PartialEq)]
pub enum WordForm {
    Alternating(AlternatingWord),
    PurePower { letter: Letter, power: usize },
}

/// Run-length encodes the lexicographically least rotation of `w`.
///
/// Words using both letters become an [`AlternatingWord`] starting with an
/// `X` run; `X^p` and `Y^p` become [`WordForm::PurePower`].
pub fn to_alternating(w: &BinaryWord) -> WordForm {
    let letters = w.letters();
    let p = letters.len();
    if letters.iter().all(|&l| l == letters[0]) {
        return WordForm::PurePower {
            letter: letters[0],
            power: p,
        };
    }
    let start = (0..p)
        .min_by(|&a, &b| {
            (0..p)
                .map(|i| letters[(a + i) % p].cmp(&letters[(b + i) % p]))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("nonempty word");
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < p {
        let mut l = 0u32;
        while i < p && letters[(start + i) % p] == Letter::X {
            l += 1;
            i += 1;
        }
        let mut m = 0u32;
        while i < p && letters[(start + i) % p] == Letter::Y {
            m += 1;
            i += 1;
        }
        pairs.push((l as f64, m as f64));
    }
    WordForm::Alternating(AlternatingWord::new(pairs).expect("runs have positive length"))
}

fn integer_exponent(e: f64) -> Option<u32> {
    (e.fract() == 0.0 && (0.0..=64.0).contains(&e)).then_some(e as u32)
}

/// Evaluates traces of words in a fixed PSD pair, reusing one eigendecomposition per matrix.
#[derive(Debug, Clone)]
pub struct WordEvaluator {
    x: SymMatrix,
    y: SymMatrix,
    ex: EigenDecomposition,
    ey: EigenDecomposition,
}

impl WordEvaluator {
    pub fn new(x: &SymMatrix, y: &SymMatrix) -> Result<Self> {
        if x.dim() != y.dim() {
            return Err(Error::Dimension {
                expected: x.dim(),
                found: y.dim(),
            });
        }
        let ex = eigh(x)?;
        ex.require_psd()?;
        let ey = eigh(y)?;
        ey.require_psd()?;
        Ok(WordEvaluator {
            x: x.clone(),
            y: y.clone(),
            ex,
            ey,
        })
    }

    pub fn x(&self) -> &SymMatrix {
        &self.x
    }

    pub fn y(&self) -> &SymMatrix {
        &self.y
    }

    pub fn x_decomposition(&self) -> &EigenDecomposition {
        &self.ex
    }

    pub fn y_decomposition(&self) -> &EigenDecomposition {
        &self.ey
    }

    /// `X^e`: repeated multiplication for integer `e`, spectral calculus otherwise.
    pub fn x_power(&self, e: f64) -> Result<SymMatrix> {
        Self::power(&self.x, &self.ex, e)
    }

    pub fn y_power(&self, e: f64) -> Result<SymMatrix> {
        Self::power(&self.y, &self.ey, e)
    }

    fn power(a: &SymMatrix, decomposition: &EigenDecomposition, e: f64) -> Result<SymMatrix> {
        match integer_exponent(e) {
            Some(k) => Ok(a.pow(k)),
            None => decomposition.psd_power(e),
        }
    }

    /// `tr X^{l_1} Y^{m_1} ⋯ X^{l_r} Y^{m_r}`.
    pub fn trace(&self, w: &AlternatingWord) -> Result<f64> {
        let n = self.x.dim();
        let mut prod = Matrix::identity(n);
        let (last_pairs, first_pairs) = w.pairs().split_last().expect("nonempty word");
        for &(l, m) in first_pairs {
            prod = prod.mul_sym(&self.x_power(l)?).mul_sym(&self.y_power(m)?);
        }
        let prod = prod.mul_sym(&self.x_power(last_pairs.0)?);
        Ok(prod.trace_of_product(&self.y_power(last_pairs.1)?.to_matrix()))
    }
}

/// `tr X^{l_1} Y^{m_1} ⋯ X^{l_r} Y^{m_r}` for PSD `X`, `Y`.
pub fn eval_word_trace(x: &SymMatrix, y: &SymMatrix, w: &AlternatingWord) -> Result<f64> {
    WordEvaluator::new(x, y)?.trace(w)
}

/// Trace of a binary word, evaluated letter by letter.
pub fn binary_word_trace(x: &SymMatrix, y: &SymMatrix, w: &BinaryWord) -> Result<f64> {
    let factors: Vec<SymMatrix> = w
        .letters()
        .iter()
        .map(|l| match l {
            Letter::X => x.clone(),
            Letter::Y => y.clone(),
        })
        .collect();
    crate::linalg::trace_product(&factors)
}

/// `tr(X + Y)^p` as the sum of the traces of all `2^p` binary words.
///
/// Words are visited depth first in lexicographic order so prefixes are
/// multiplied once.
pub fn expand_trace_power(x: &SymMatrix, y: &SymMatrix, p: usize) -> Result<f64> {
    check_word_budget(p)?;
    if x.dim() != y.dim() {
        return Err(Error::Dimension {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    let xm = x.to_matrix();
    let ym = y.to_matrix();
    let mut acc = CompensatedSum::new();

    fn visit(
        prefix: &Matrix,
        depth: usize,
        p: usize,
        xm: &Matrix,
        ym: &Matrix,
        acc: &mut CompensatedSum,
    ) {
        if depth + 1 == p {
            acc.add(prefix.trace_of_product(xm));
            acc.add(prefix.trace_of_product(ym));
            return;
        }
        for letter in [xm, ym] {
            visit(&prefix.mul(letter), depth + 1, p, xm, ym, acc);
        }
    }

    visit(&Matrix::identity(x.dim()), 0, p, &xm, &ym, &mut acc);
    Ok(acc.value())
}
