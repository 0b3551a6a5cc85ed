//! Exact rational scalars.
//!
//! Every distance, radius and limit in this crate is a [`Rat`]. There is no
//! floating point anywhere: the separation axiom is an exact equality and
//! would be meaningless under rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always reduced, denominator positive.
pub type Rat = BigRational;

/// `n/d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `2^-k` exactly.
pub fn pow2_neg(k: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k)
}

/// True iff `r` is `2^-k` for some `k >= min_exp` (with `2^0 = 1`).
pub fn is_pow2_recip(r: &Rat, min_exp: usize) -> bool {
    if !r.numer().is_one() {
        return false;
    }
    if !r.denom().is_positive() {
        return false;
    }
    let d = r.denom().magnitude();
    // power of two: exactly one set bit
    if d.count_ones() != 1 {
        return false;
    }
    d.bits() as usize - 1 >= min_exp
}

/// Renders `p/q`, or just `p` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or `-p/q`. Rejects zero denominators.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| format!("invalid numerator `{n}`"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| format!("invalid denominator `{d}`"))?;
    if d.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-3", "1/2", "7/3", "-5/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        // reduction happens on parse
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn pow2_values() {
        assert_eq!(pow2_neg(0), rat_int(1));
        assert_eq!(pow2_neg(3), rat(1, 8));
        assert!(is_pow2_recip(&rat(1, 8), 0));
        assert!(is_pow2_recip(&rat_int(1), 0));
        assert!(!is_pow2_recip(&rat_int(1), 1));
        assert!(!is_pow2_recip(&rat(1, 3), 0));
        assert!(!is_pow2_recip(&rat(3, 8), 0));
        assert!(is_pow2_recip(&rat(1, 1024), 10));
        assert!(!is_pow2_recip(&rat(1, 512), 10));
    }
}
