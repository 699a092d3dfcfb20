//! Rational-number helpers shared by the geometry modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("invalid character {ch:?} at offset {offset}")]
    InvalidChar { ch: char, offset: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent out of range")]
    Exponent,
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a decimal literal (`-12.5`, `3`, `1.25e-3`) or a fraction (`7/3`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_integer(num.trim(), 0)?;
        let den_offset = text.find('/').unwrap_or(0) + 1;
        let den = parse_integer(den.trim(), den_offset)?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator);
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp_text = &text[pos + 1..];
            let exp: i64 = exp_text.parse().map_err(|_| ParseRationalError::InvalidChar {
                ch: exp_text.chars().next().unwrap_or('e'),
                offset: pos + 1,
            })?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    if exponent.abs() > 100_000 {
        return Err(ParseRationalError::Exponent);
    }

    let (negative, body, body_offset) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..], 1),
        Some(b'+') => (false, &mantissa[1..], 1),
        _ => (false, mantissa, 0),
    };
    if body.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let mut digits = BigInt::zero();
    let mut frac_digits: i64 = 0;
    let mut seen_point = false;
    let mut seen_digit = false;
    for (i, ch) in body.char_indices() {
        match ch {
            '0'..='9' => {
                digits = digits * 10u32 + (ch as u32 - '0' as u32);
                seen_digit = true;
                if seen_point {
                    frac_digits += 1;
                }
            }
            '.' if !seen_point => seen_point = true,
            _ => {
                return Err(ParseRationalError::InvalidChar {
                    ch,
                    offset: body_offset + i,
                })
            }
        }
    }
    if !seen_digit {
        return Err(ParseRationalError::Empty);
    }
    if negative {
        digits = -digits;
    }
    let scale = exponent - frac_digits;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

fn parse_integer(text: &str, offset: usize) -> Result<BigInt, ParseRationalError> {
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    for (i, ch) in text.char_indices() {
        let sign_ok = i == 0 && (ch == '-' || ch == '+');
        if !ch.is_ascii_digit() && !sign_ok {
            return Err(ParseRationalError::InvalidChar { ch, offset: offset + i });
        }
    }
    text.parse::<BigInt>()
        .map_err(|_| ParseRationalError::Empty)
}

/// Nearest multiple of `2^-bits` (ties toward +inf). Negative `bits` rounds
/// to multiples of `2^|bits|`.
pub fn round_dyadic(value: &Rational, bits: i32) -> Rational {
    let scale = pow2(bits);
    let scaled = value * &scale + Rational::new(BigInt::one(), BigInt::from(2));
    Rational::from_integer(scaled.floor().to_integer()) / scale
}

pub fn pow2(bits: i32) -> Rational {
    let mag = BigInt::one() << bits.unsigned_abs() as usize;
    if bits >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Smallest dyadic `q = m / 2^bits` with `q > sqrt(value)` for the given
/// precision. `value` must be non-negative.
pub fn sqrt_upper_dyadic(value: &Rational, bits: u32) -> Rational {
    debug_assert!(!value.is_negative());
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (value * Rational::from_integer(scale)).floor().to_integer();
    let root = scaled.sqrt() + BigInt::one();
    Rational::new(root, BigInt::one() << bits as usize)
}

/// Rough size measure used in diagnostics: bits of numerator plus denominator.
pub fn bit_size(value: &Rational) -> u64 {
    value.numer().bits() + value.denom().bits()
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Huge magnitudes; approximate through the bit-length.
        let shift = value.numer().bits().max(value.denom().bits()).saturating_sub(900) as usize;
        let n = (value.numer() >> shift).to_f64().unwrap_or(f64::MAX);
        let d = (value.denom() >> shift).to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Binomial coefficient for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-12.50").unwrap(), ratio(-25, 2));
        assert_eq!(parse_rational("1.25e-3").unwrap(), ratio(1, 800));
        assert_eq!(parse_rational("3E2").unwrap(), int(300));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
        assert_eq!(parse_rational("22/-7").unwrap(), ratio(-22, 7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            parse_rational("1.2.3"),
            Err(ParseRationalError::InvalidChar { ch: '.', offset: 3 })
        ));
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert_eq!(parse_rational("-"), Err(ParseRationalError::Empty));
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
    }

    #[test]
    fn dyadic_rounding() {
        assert_eq!(round_dyadic(&ratio(1, 3), 2), ratio(1, 4));
        assert_eq!(round_dyadic(&ratio(5, 8), 1), ratio(1, 2));
        assert_eq!(round_dyadic(&ratio(3, 4), 1), int(1));
        assert_eq!(round_dyadic(&int(5), -2), int(4));
        assert_eq!(round_dyadic(&ratio(-1, 3), 2), ratio(-1, 4));
    }

    #[test]
    fn sqrt_upper_is_upper() {
        for v in [ratio(2, 1), ratio(9, 4), ratio(1, 1000), int(0)] {
            for bits in [0u32, 4, 20] {
                let r = sqrt_upper_dyadic(&v, bits);
                assert!(&r * &r > v);
                let below = &r - pow2(-(bits as i32));
                assert!(below.is_negative() || &below * &below <= v);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(7, 2), 21);
        assert_eq!(binomial(3, 5), 0);
    }
}
