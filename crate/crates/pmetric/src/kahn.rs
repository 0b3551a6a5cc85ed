//! The Kahn domain: finite words and streams over a finite alphabet with
//! the distance `2^-lcp`, where `lcp` is the length of the longest common
//! initial segment.
//!
//! Words have self-distance `2^-length`; streams have self-distance limit 0
//! (the lcp of a stream with itself is unbounded, which operations report
//! as a certified interval rather than a rounded number). Streams are
//! prefix oracles and are never materialised.

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{fmt_rat, pow2_neg, rat, rat_int, Rat};
use crate::space::{FinitePMetricSpace, SpaceError};

pub const TRUNCATION_BUDGET: usize = 20_000;

/// Scan cap for prefix comparisons whose termination we cannot bound
/// structurally (e.g. an aperiodic builtin against a periodic stream: a
/// mismatch exists, but its position has no closed-form bound).
const LCP_SCAN_CAP: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KahnError {
    #[error("alphabet must be a nonempty list of distinct symbols")]
    BadAlphabet,
    #[error("stream oracle violation: {0}")]
    OracleViolation(String),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(String),
    #[error("truncation to this depth needs {required} points, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },
    #[error("longest common prefix undecided after {0} symbols")]
    LcpUndecided(usize),
    #[error("unknown stream spec `{0}`")]
    UnknownStream(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Nonempty finite list of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self, KahnError> {
        if symbols.is_empty() {
            return Err(KahnError::BadAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(KahnError::BadAlphabet);
            }
        }
        Ok(Self { symbols })
    }

    pub fn from_str_symbols(s: &str) -> Result<Self, KahnError> {
        Self::new(s.chars().collect())
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    /// All words of length at most `max_len`, shortest first, symbols in
    /// alphabet order within each length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.symbols.len());
            for w in &layer {
                for &s in &self.symbols {
                    let mut ext = w.clone();
                    ext.push(s);
                    next.push(ext);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Description of an infinite stream as a total prefix oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamSpec {
    /// `prefix` then `cycle` repeated forever.
    EventuallyPeriodic { prefix: String, cycle: String },
    /// The Thue-Morse stream over two symbols: position `i` carries `one`
    /// iff `i` has odd popcount. Aperiodic, so it differs from every
    /// eventually periodic stream.
    ThueMorse { zero: char, one: char },
}

impl StreamSpec {
    pub fn repeat(cycle: &str) -> Result<Self, KahnError> {
        Self::eventually_periodic("", cycle)
    }

    pub fn eventually_periodic(prefix: &str, cycle: &str) -> Result<Self, KahnError> {
        if cycle.is_empty() {
            return Err(KahnError::OracleViolation(
                "empty cycle cannot describe an infinite stream".to_string(),
            ));
        }
        Ok(Self::EventuallyPeriodic {
            prefix: prefix.to_string(),
            cycle: cycle.to_string(),
        })
    }

    pub fn symbol_at(&self, i: usize) -> char {
        match self {
            Self::EventuallyPeriodic { prefix, cycle } => {
                let p: Vec<char> = prefix.chars().collect();
                let c: Vec<char> = cycle.chars().collect();
                if i < p.len() {
                    p[i]
                } else {
                    c[(i - p.len()) % c.len()]
                }
            }
            Self::ThueMorse { zero, one } => {
                if (i as u64).count_ones() % 2 == 0 {
                    *zero
                } else {
                    *one
                }
            }
        }
    }

    /// The length-`k` prefix; coherent by construction (`prefix(k)` is a
    /// prefix of `prefix(k+1)` for every generated oracle).
    pub fn prefix(&self, k: usize) -> String {
        (0..k).map(|i| self.symbol_at(i)).collect()
    }
}

/// A point of the Kahn domain: finite word or stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KahnPoint {
    Word(String),
    Stream(StreamSpec),
}

impl KahnPoint {
    pub fn word(w: &str) -> Self {
        Self::Word(w.to_string())
    }

    pub fn empty_word() -> Self {
        Self::Word(String::new())
    }

    pub fn is_word(&self) -> bool {
        matches!(self, Self::Word(_))
    }

    /// Symbol at position `i`, or `None` past the end of a word.
    fn symbol_at(&self, i: usize) -> Option<char> {
        match self {
            Self::Word(w) => w.chars().nth(i),
            Self::Stream(s) => Some(s.symbol_at(i)),
        }
    }

    /// Exact self-distance limit: `2^-length` for a word, 0 for a stream.
    pub fn self_distance_limit(&self) -> Rat {
        match self {
            Self::Word(w) => pow2_neg(w.chars().count()),
            Self::Stream(_) => rat_int(0),
        }
    }

    /// The length-`k` approximant used in completion constructions.
    pub fn prefix(&self, k: usize) -> String {
        match self {
            Self::Word(w) => w.chars().take(k).collect(),
            Self::Stream(s) => s.prefix(k),
        }
    }

    /// CLI-facing syntax: `eps`, a bare word, `word:<w>`, `repeat:<w>`,
    /// or `program:thue-morse`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, KahnError> {
        let admit = |w: &str| {
            if w.chars().all(|c| alphabet.symbols().contains(&c)) {
                Ok(())
            } else {
                Err(KahnError::BadAlphabet)
            }
        };
        if text == "eps" {
            return Ok(Self::empty_word());
        }
        if let Some(w) = text.strip_prefix("word:") {
            admit(w)?;
            return Ok(Self::Word(w.to_string()));
        }
        if let Some(w) = text.strip_prefix("repeat:") {
            admit(w)?;
            return Ok(Self::Stream(StreamSpec::repeat(w)?));
        }
        if let Some(id) = text.strip_prefix("program:") {
            return match id {
                "thue-morse" => {
                    if alphabet.len() < 2 {
                        return Err(KahnError::BadAlphabet);
                    }
                    Ok(Self::Stream(StreamSpec::ThueMorse {
                        zero: alphabet.symbols()[0],
                        one: alphabet.symbols()[1],
                    }))
                }
                other => Err(KahnError::UnknownStream(other.to_string())),
            };
        }
        admit(text)?;
        Ok(Self::Word(text.to_string()))
    }
}

/// Length of the longest common initial segment, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    Finite(usize),
    Infinite,
}

/// Distance value that may only be known up to a certified interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KahnDistance {
    Exact(Rat),
    /// The true value lies in `[0, upper]`.
    Bounded { upper: Rat },
}

impl KahnDistance {
    pub fn upper(&self) -> &Rat {
        match self {
            Self::Exact(r) => r,
            Self::Bounded { upper } => upper,
        }
    }
}

enum ScanOutcome {
    Determined(usize),
    AgreeThrough(usize),
}

/// Compares the first `k` positions; a mismatch or a word end pins the lcp.
fn scan_lcp(x: &KahnPoint, y: &KahnPoint, k: usize) -> ScanOutcome {
    for i in 0..k {
        match (x.symbol_at(i), y.symbol_at(i)) {
            (Some(a), Some(b)) if a == b => continue,
            _ => return ScanOutcome::Determined(i),
        }
    }
    match (x.symbol_at(k), y.symbol_at(k)) {
        // a word ended exactly at k: the lcp cannot grow further
        (None, _) | (_, None) => ScanOutcome::Determined(k),
        _ => ScanOutcome::AgreeThrough(k),
    }
}

/// The Kahn pmetric at bounded precision: exactly `2^-lcp` when the lcp is
/// determined within `precision` symbols, else the certified interval
/// `[0, 2^-precision]`. Word/word pairs always resolve exactly.
pub fn kahn_pmetric(x: &KahnPoint, y: &KahnPoint, precision: usize) -> KahnDistance {
    match scan_lcp(x, y, precision) {
        ScanOutcome::Determined(l) => KahnDistance::Exact(pow2_neg(l)),
        ScanOutcome::AgreeThrough(k) => KahnDistance::Bounded {
            upper: pow2_neg(k),
        },
    }
}

/// Exact lcp, using the structure of the stream specs to decide equality:
/// two eventually periodic streams agreeing past their prefixes for a full
/// sum of cycle lengths are equal (Fine and Wilf), and identical specs are
/// trivially equal. Aperiodic-vs-periodic pairs are scanned to a cap.
pub fn lcp_exact(x: &KahnPoint, y: &KahnPoint) -> Result<Extent, KahnError> {
    let bound = match (x, y) {
        (KahnPoint::Word(w), _) | (_, KahnPoint::Word(w)) => w.chars().count() + 1,
        (KahnPoint::Stream(a), KahnPoint::Stream(b)) => {
            if a == b {
                return Ok(Extent::Infinite);
            }
            match (a, b) {
                (
                    StreamSpec::EventuallyPeriodic {
                        prefix: p1,
                        cycle: c1,
                    },
                    StreamSpec::EventuallyPeriodic {
                        prefix: p2,
                        cycle: c2,
                    },
                ) => {
                    p1.chars().count().max(p2.chars().count())
                        + c1.chars().count()
                        + c2.chars().count()
                }
                _ => LCP_SCAN_CAP,
            }
        }
    };
    match scan_lcp(x, y, bound) {
        ScanOutcome::Determined(l) => Ok(Extent::Finite(l)),
        ScanOutcome::AgreeThrough(k) => match (x, y) {
            (KahnPoint::Stream(StreamSpec::EventuallyPeriodic { .. }),
             KahnPoint::Stream(StreamSpec::EventuallyPeriodic { .. })) => Ok(Extent::Infinite),
            _ => Err(KahnError::LcpUndecided(k)),
        },
    }
}

/// Exact distance between two Kahn points, defined whenever the lcp is
/// structurally decidable (always, for the spec forms admitted here).
pub fn kahn_distance_exact(x: &KahnPoint, y: &KahnPoint) -> Result<Rat, KahnError> {
    Ok(match lcp_exact(x, y)? {
        Extent::Finite(l) => pow2_neg(l),
        Extent::Infinite => rat_int(0),
    })
}

/// The finite fragment of words of length at most `depth`, as a concrete
/// pmetric space. The empty word is labelled `ε`.
pub fn truncate(alphabet: &Alphabet, depth: usize) -> Result<FinitePMetricSpace, KahnError> {
    let s = alphabet.len();
    let mut required: usize = 1;
    let mut layer: usize = 1;
    for _ in 0..depth {
        layer = layer.saturating_mul(s);
        required = required.saturating_add(layer);
        if required > TRUNCATION_BUDGET {
            return Err(KahnError::BudgetExceeded {
                required,
                budget: TRUNCATION_BUDGET,
            });
        }
    }
    let words = alphabet.words_up_to(depth);
    let labels: Vec<String> = words
        .iter()
        .map(|w| if w.is_empty() { "ε".to_string() } else { w.clone() })
        .collect();
    let points: Vec<KahnPoint> = words.iter().map(|w| KahnPoint::word(w)).collect();
    let matrix: Vec<Vec<Rat>> = points
        .iter()
        .map(|x| {
            points
                .iter()
                .map(|y| kahn_distance_exact(x, y).expect("word/word lcp is exact"))
                .collect()
        })
        .collect();
    Ok(FinitePMetricSpace::new(labels, matrix)?)
}

/// Which set of words plays the approximating subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordSubset {
    AllWords,
    WordsMinusEmpty,
}

/// Result of a two-sided denseness probe at one radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityOutcome {
    /// A word `w` in the subset with `p(w,x) < p(w,w) + eps` and
    /// `p(x,w) < p(x,x) + eps`.
    Witness { word: String },
    /// No such word exists; the empty word cannot be symmetrically
    /// approximated from the nonempty words at this radius.
    Asymmetry(AsymmetryCertificate),
}

/// Certificate that `p(y, ε) = 1 >= p(y,y) + epsilon` for every nonempty
/// word `y`: mechanically swept up to a length bound, globally valid
/// because `p(y,y) <= 1/2` once `y` is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymmetryCertificate {
    pub epsilon: Rat,
    pub verified_up_to_length: usize,
    pub words_checked: usize,
    pub holds_globally: bool,
}

/// Sweeps every nonempty word up to `max_len` and checks the asymmetry
/// inequality exactly.
pub fn asymmetry_certificate(
    alphabet: &Alphabet,
    epsilon: &Rat,
    max_len: usize,
) -> Result<AsymmetryCertificate, KahnError> {
    if !num_traits::Signed::is_positive(epsilon) {
        return Err(KahnError::InvalidEpsilon(fmt_rat(epsilon)));
    }
    let empty = KahnPoint::empty_word();
    let mut words_checked = 0;
    let mut all_hold = true;
    for w in alphabet.words_up_to(max_len) {
        if w.is_empty() {
            continue;
        }
        let y = KahnPoint::word(&w);
        let d = kahn_distance_exact(&y, &empty).unwrap();
        let self_d = y.self_distance_limit();
        words_checked += 1;
        if d < self_d + epsilon {
            all_hold = false;
        }
    }
    Ok(AsymmetryCertificate {
        epsilon: epsilon.clone(),
        verified_up_to_length: max_len,
        words_checked,
        holds_globally: all_hold && *epsilon <= rat(1, 2),
    })
}

/// Produces a two-sided density witness from the chosen word subset for
/// the point `x` at radius `epsilon`, or the asymmetry certificate when
/// `x` is the empty word, the subset excludes it, and the radius is too
/// small for any nonempty word to reach it.
pub fn density_witness(
    alphabet: &Alphabet,
    subset: WordSubset,
    x: &KahnPoint,
    epsilon: &Rat,
) -> Result<DensityOutcome, KahnError> {
    if !num_traits::Signed::is_positive(epsilon) {
        return Err(KahnError::InvalidEpsilon(fmt_rat(epsilon)));
    }
    match x {
        KahnPoint::Word(w) => {
            if !w.is_empty() || subset == WordSubset::AllWords {
                // the point itself is in the subset
                return Ok(DensityOutcome::Witness { word: w.clone() });
            }
            // x = ε, subset excludes it: any single-symbol word y has
            // p(y,ε) = 1, needing 1 < 1/2 + epsilon
            if *epsilon > rat(1, 2) {
                Ok(DensityOutcome::Witness {
                    word: alphabet.symbols()[0].to_string(),
                })
            } else {
                Ok(DensityOutcome::Asymmetry(asymmetry_certificate(
                    alphabet, epsilon, 10,
                )?))
            }
        }
        KahnPoint::Stream(s) => {
            // prefix of length k with 2^-k < epsilon works on both sides
            let mut k = 1;
            while &pow2_neg(k) >= epsilon {
                k += 1;
            }
            Ok(DensityOutcome::Witness { word: s.prefix(k) })
        }
    }
}

/// A p-Cauchy sequence of words with no word limit: the prefixes of the
/// constant stream on the first alphabet symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompletenessWitness {
    /// The stream whose prefixes form the sequence.
    pub stream: KahnPoint,
    /// `lim p(x_n, x_n) = 0`: the sequence is 0-Cauchy.
    pub self_distance_limit: Rat,
}

impl IncompletenessWitness {
    /// `lim_n p(w, x_n) = 2^-lcp(w, stream)` for a word `w`.
    pub fn word_cross_limit(&self, w: &str) -> Rat {
        kahn_distance_exact(&KahnPoint::word(w), &self.stream)
            .expect("word lcp is exact")
    }

    /// Confirms no word of length at most `max_len` satisfies the p-limit
    /// equalities: a limit `w` would need `p(w,w) = lim p(x_n,x_n) = 0`,
    /// but every word has `p(w,w) = 2^-|w| > 0`.
    pub fn no_word_limit(&self, alphabet: &Alphabet, max_len: usize) -> bool {
        alphabet.words_up_to(max_len).iter().all(|w| {
            let self_d = KahnPoint::word(w).self_distance_limit();
            !self_d.is_zero()
        })
    }
}

pub fn kahn_incompleteness_witness(alphabet: &Alphabet) -> IncompletenessWitness {
    let first = alphabet.symbols()[0].to_string();
    let stream = KahnPoint::Stream(StreamSpec::repeat(&first).expect("nonempty cycle"));
    IncompletenessWitness {
        stream,
        self_distance_limit: rat_int(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn binary() -> Alphabet {
        Alphabet::from_str_symbols("01").unwrap()
    }

    #[test]
    fn basic_distances() {
        let eps = KahnPoint::empty_word();
        assert_eq!(
            kahn_pmetric(&eps, &eps, 5),
            KahnDistance::Exact(rat_int(1))
        );
        assert_eq!(
            kahn_pmetric(&KahnPoint::word("ab"), &KahnPoint::word("ac"), 5),
            KahnDistance::Exact(rat(1, 2))
        );
        assert_eq!(
            kahn_pmetric(&KahnPoint::word("ab"), &KahnPoint::word("ab"), 5),
            KahnDistance::Exact(rat(1, 4))
        );
    }

    #[test]
    fn stream_self_pair_is_an_interval() {
        let zeros = KahnPoint::Stream(StreamSpec::repeat("0").unwrap());
        assert_eq!(
            kahn_pmetric(&zeros, &zeros, 10),
            KahnDistance::Bounded {
                upper: pow2_neg(10)
            }
        );
        // refining the precision never exits the previous interval
        let mut prev = rat_int(1);
        for k in 0..20 {
            let d = kahn_pmetric(&zeros, &zeros, k);
            assert!(d.upper() <= &prev);
            prev = d.upper().clone();
        }
        assert_eq!(kahn_distance_exact(&zeros, &zeros).unwrap(), rat_int(0));
    }

    #[test]
    fn distinct_streams_resolve_exactly() {
        let zeros = KahnPoint::Stream(StreamSpec::repeat("0").unwrap());
        let ones = KahnPoint::Stream(StreamSpec::repeat("1").unwrap());
        assert_eq!(kahn_distance_exact(&zeros, &ones).unwrap(), rat_int(1));
        // periodic streams that agree despite different presentations
        let a = KahnPoint::Stream(StreamSpec::repeat("01").unwrap());
        let b = KahnPoint::Stream(StreamSpec::repeat("0101").unwrap());
        assert_eq!(lcp_exact(&a, &b).unwrap(), Extent::Infinite);
        let c = KahnPoint::Stream(StreamSpec::eventually_periodic("0", "10").unwrap());
        assert_eq!(lcp_exact(&a, &c).unwrap(), Extent::Infinite);
    }

    #[test]
    fn thue_morse_differs_from_periodic() {
        let tm = KahnPoint::Stream(StreamSpec::ThueMorse {
            zero: '0',
            one: '1',
        });
        let periodic = KahnPoint::Stream(StreamSpec::repeat("0110").unwrap());
        // 0110 1001 1001 0110 ... vs 0110 0110: first mismatch at index 4
        assert_eq!(lcp_exact(&tm, &periodic).unwrap(), Extent::Finite(4));
        assert_eq!(lcp_exact(&tm, &tm).unwrap(), Extent::Infinite);
    }

    #[test]
    fn word_stream_distance() {
        let zeros = KahnPoint::Stream(StreamSpec::repeat("0").unwrap());
        assert_eq!(
            kahn_distance_exact(&KahnPoint::word("00"), &zeros).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            kahn_distance_exact(&KahnPoint::word("01"), &zeros).unwrap(),
            rat(1, 2)
        );
    }

    #[test]
    fn truncate_small_fragments() {
        let t = truncate(&binary(), 1).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.label(0), "ε");
        let zero = t.index_of("0").unwrap();
        let one = t.index_of("1").unwrap();
        assert_eq!(t.p(zero, one), &rat_int(1));
        assert_eq!(t.p(zero, zero), &rat(1, 2));
        assert!(t.check_axioms().passed());

        let single = Alphabet::from_str_symbols("a").unwrap();
        let t = truncate(&single, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.p(0, 0), &rat_int(1));

        assert!(truncate(&binary(), 2).unwrap().check_axioms().passed());
    }

    #[test]
    fn truncate_budget() {
        let err = truncate(&binary(), 30).unwrap_err();
        assert!(matches!(err, KahnError::BudgetExceeded { .. }));
    }

    #[test]
    fn density_witness_for_a_stream() {
        let zeros = KahnPoint::Stream(StreamSpec::repeat("0").unwrap());
        let out =
            density_witness(&binary(), WordSubset::AllWords, &zeros, &rat(1, 4)).unwrap();
        assert_eq!(
            out,
            DensityOutcome::Witness {
                word: "000".to_string()
            }
        );
    }

    #[test]
    fn density_witness_for_a_word_is_itself() {
        let w = KahnPoint::word("01");
        let out = density_witness(&binary(), WordSubset::AllWords, &w, &rat(1, 8)).unwrap();
        assert_eq!(
            out,
            DensityOutcome::Witness {
                word: "01".to_string()
            }
        );
    }

    #[test]
    fn empty_word_asymmetry() {
        let out = density_witness(
            &binary(),
            WordSubset::WordsMinusEmpty,
            &KahnPoint::empty_word(),
            &rat(1, 2),
        )
        .unwrap();
        match out {
            DensityOutcome::Asymmetry(cert) => {
                assert!(cert.holds_globally);
                assert_eq!(cert.verified_up_to_length, 10);
                assert_eq!(cert.words_checked, 2046);
            }
            other => panic!("expected asymmetry certificate, got {other:?}"),
        }
        // large radii do admit a witness
        let out = density_witness(
            &binary(),
            WordSubset::WordsMinusEmpty,
            &KahnPoint::empty_word(),
            &rat(3, 4),
        )
        .unwrap();
        assert_eq!(
            out,
            DensityOutcome::Witness {
                word: "0".to_string()
            }
        );
    }

    #[test]
    fn incompleteness_witness_has_no_word_limit() {
        let w = kahn_incompleteness_witness(&binary());
        assert_eq!(w.self_distance_limit, rat_int(0));
        assert_eq!(w.word_cross_limit("00"), rat(1, 4));
        assert!(w.no_word_limit(&binary(), 6));
    }

    #[test]
    fn oracle_and_input_validation() {
        assert!(matches!(
            StreamSpec::repeat(""),
            Err(KahnError::OracleViolation(_))
        ));
        assert!(Alphabet::from_str_symbols("").is_err());
        assert!(Alphabet::from_str_symbols("aa").is_err());
        let zeros = KahnPoint::Stream(StreamSpec::repeat("0").unwrap());
        assert!(matches!(
            density_witness(&binary(), WordSubset::AllWords, &zeros, &rat_int(0)),
            Err(KahnError::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn point_parsing() {
        let alpha = binary();
        assert_eq!(
            KahnPoint::parse("eps", &alpha).unwrap(),
            KahnPoint::empty_word()
        );
        assert_eq!(
            KahnPoint::parse("01", &alpha).unwrap(),
            KahnPoint::word("01")
        );
        assert_eq!(
            KahnPoint::parse("word:011", &alpha).unwrap(),
            KahnPoint::word("011")
        );
        // out-of-alphabet symbols are rejected, bare or prefixed
        assert!(KahnPoint::parse("012", &alpha).is_err());
        assert!(KahnPoint::parse("word:2", &alpha).is_err());
        assert!(KahnPoint::parse("repeat:x", &alpha).is_err());
        assert!(matches!(
            KahnPoint::parse("repeat:0", &alpha).unwrap(),
            KahnPoint::Stream(StreamSpec::EventuallyPeriodic { .. })
        ));
        assert!(matches!(
            KahnPoint::parse("program:thue-morse", &alpha).unwrap(),
            KahnPoint::Stream(StreamSpec::ThueMorse { .. })
        ));
        assert!(KahnPoint::parse("program:nope", &alpha).is_err());
    }
}
