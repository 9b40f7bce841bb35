//! The `w_h` sequences, exact rational power series, the growth rate of
//! `w_h`, and the Higman ordering on words.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `w_h(n) = 1` for `n < h`, then `w_h(n) = w_h(n-1) + w_h(n-h)`.
pub fn w_sequence(h: usize, n_max: usize) -> Result<Vec<BigInt>> {
    if h == 0 {
        return Err(Error::Range("h must be at least 1".into()));
    }
    let mut w: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let next = if n < h { BigInt::one() } else { &w[n - 1] + &w[n - h] };
        w.push(next);
    }
    Ok(w)
}

/// `num / den` with integer coefficients, lowest degree first. The
/// denominator's constant term is normalized to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

impl RationalSeries {
    pub fn new(num: Vec<BigInt>, den: Vec<BigInt>) -> Result<Self> {
        let c = den.first().cloned().unwrap_or_else(BigInt::zero);
        if c.abs() != BigInt::one() {
            return Err(Error::NonUnitConstantTerm(c.to_string()));
        }
        if c.is_negative() {
            return Ok(RationalSeries {
                num: num.into_iter().map(|x| -x).collect(),
                den: den.into_iter().map(|x| -x).collect(),
            });
        }
        Ok(RationalSeries { num, den })
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(num.iter().map(|&x| x.into()).collect(), den.iter().map(|&x| x.into()).collect())
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }
}

/// Coefficients `0..=n_max` of the power series of `s`.
pub fn series_expand(s: &RationalSeries, n_max: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut x = s.num.get(n).cloned().unwrap_or_else(BigInt::zero);
        for (i, d) in s.den.iter().enumerate().skip(1).take(n) {
            x -= d * &c[n - i];
        }
        c.push(x);
    }
    c
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Generating series of the profiles of `G_1..G_5` exactly as printed with
/// the profile analysis of the ten graphs.
pub fn printed_profile_series(i: usize) -> Option<RationalSeries> {
    let one_minus = |k: usize| {
        let mut p = vec![0; k + 1];
        p[0] = 1;
        p[k] = -1;
        p
    };
    let (num, den): (Vec<i64>, Vec<i64>) = match i {
        1 => (vec![1], poly_mul(&one_minus(1), &one_minus(2))),
        2 => (vec![1, -1, -2, 1], poly_mul(&[1, -2], &[1, 0, -2])),
        3 => (
            vec![1, 0, -1, 1, 2, -2, -1, 1],
            poly_mul(&one_minus(1), &poly_mul(&one_minus(2), &one_minus(2))),
        ),
        4 => {
            let cube = poly_mul(&one_minus(1), &poly_mul(&one_minus(1), &one_minus(1)));
            (vec![1, -1, 0, 2, 0, -1], poly_mul(&cube, &[1, 1]))
        }
        5 => (vec![1, -1, -2], vec![1, -2]),
        _ => return None,
    };
    Some(RationalSeries::from_i64(&num, &den).expect("unit constant term"))
}

/// Largest root of `X^h - X^(h-1) - 1`, which lies in `(1, 2]`, by
/// bisection to width `tol`.
pub fn growth_root(h: usize, tol: f64) -> Result<f64> {
    if h == 0 {
        return Err(Error::Range("h must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Range("tolerance must be positive".into()));
    }
    let f = |x: f64| x.powi(h as i32) - x.powi(h as i32 - 1) - 1.0;
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A finite alphabet of characters with a partial order.
#[derive(Clone, Debug)]
pub struct Alphabet {
    letters: Vec<char>,
    /// `leq[a][b]` for letter indices.
    leq: Vec<Vec<bool>>,
}

impl Alphabet {
    /// Letters compared by equality only.
    pub fn discrete(letters: &str) -> Self {
        Self::new(letters, &[]).expect("no relations to check")
    }

    /// Order generated by the pairs `a <= b`.
    pub fn new(letters: &str, pairs: &[(char, char)]) -> Result<Self> {
        let letters: Vec<char> = letters.chars().collect();
        let n = letters.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let index = |c: char| {
            letters.iter().position(|&l| l == c).ok_or_else(|| Error::UnknownLetter(c.to_string()))
        };
        for &(a, b) in pairs {
            leq[index(a)?][index(b)?] = true;
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][m] && leq[m][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Ok(Alphabet { letters, leq })
    }

    fn index(&self, c: char) -> Result<usize> {
        self.letters.iter().position(|&l| l == c).ok_or_else(|| Error::UnknownLetter(c.to_string()))
    }
}

/// `v <= w` in the Higman ordering: some increasing injection sends each
/// letter of `v` to a letter of `w` above it. Greedy leftmost matching.
pub fn higman_leq(v: &str, w: &str, alphabet: &Alphabet) -> Result<bool> {
    let v: Vec<usize> = v.chars().map(|c| alphabet.index(c)).collect::<Result<_>>()?;
    let w: Vec<usize> = w.chars().map(|c| alphabet.index(c)).collect::<Result<_>>()?;
    let mut j = 0;
    for &a in &v {
        while j < w.len() && !alphabet.leq[a][w[j]] {
            j += 1;
        }
        if j == w.len() {
            return Ok(false);
        }
        j += 1;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn w_examples() {
        assert_eq!(ints(&w_sequence(2, 6).unwrap()), [1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(ints(&w_sequence(1, 4).unwrap()), [1, 2, 4, 8, 16]);
        assert_eq!(ints(&w_sequence(3, 8).unwrap()), [1, 1, 1, 2, 3, 4, 6, 9, 13]);
        assert!(w_sequence(0, 3).is_err());
    }

    #[test]
    fn series_examples() {
        let fib = RationalSeries::from_i64(&[1], &[1, -1, -1]).unwrap();
        assert_eq!(ints(&series_expand(&fib, 5)), [1, 1, 2, 3, 5, 8]);
        let ones = RationalSeries::from_i64(&[1], &[1, -1]).unwrap();
        assert_eq!(ints(&series_expand(&ones, 4)), [1; 5]);
        let negated = RationalSeries::from_i64(&[-1], &[-1, 1]).unwrap();
        assert_eq!(ints(&series_expand(&negated, 4)), [1; 5]);
        assert!(matches!(RationalSeries::from_i64(&[1], &[2, 1]), Err(Error::NonUnitConstantTerm(_))));
        assert!(RationalSeries::from_i64(&[1], &[]).is_err());
    }

    #[test]
    fn printed_series_expansions() {
        let expand = |i| ints(&series_expand(&printed_profile_series(i).unwrap(), 11));
        assert_eq!(expand(1), [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6]);
        assert_eq!(expand(2), [1, 1, 2, 3, 6, 10, 20, 36, 72, 136, 272, 528]);
        assert_eq!(expand(3), [1, 1, 2, 3, 6, 6, 10, 10, 15, 15, 21, 21]);
        assert_eq!(expand(4), [1, 1, 2, 4, 7, 10, 14, 18, 23, 28, 34, 40]);
        // (1 - x - 2x^2) / (1 - 2x) reduces to 1 + x.
        assert_eq!(expand(5), [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let corrected = RationalSeries::from_i64(&[1, -1], &[1, -2]).unwrap();
        assert_eq!(ints(&series_expand(&corrected, 6)), [1, 1, 2, 4, 8, 16, 32]);
        assert!(printed_profile_series(6).is_none());
    }

    #[test]
    fn roots() {
        assert!((growth_root(2, 1e-12).unwrap() - 1.618_033_988_749_895).abs() < 1e-10);
        let r3 = growth_root(3, 1e-12).unwrap();
        assert!((r3 - 1.465_571_231_876_768).abs() < 1e-9);
        assert!((growth_root(1, 1e-12).unwrap() - 2.0).abs() < 1e-11);
        for h in 2..10 {
            let r = growth_root(h, 1e-12).unwrap();
            assert!(r > 1.0 && r <= 2.0);
            let f = |x: f64| x.powi(h as i32) - x.powi(h as i32 - 1) - 1.0;
            assert!(f(r - 1e-9) < 0.0 && f(r + 1e-9) > 0.0);
        }
    }

    #[test]
    fn higman() {
        let abx = Alphabet::discrete("abx");
        assert!(higman_leq("", "xab", &abx).unwrap());
        assert!(higman_leq("ab", "xaxbx", &abx).unwrap());
        assert!(!higman_leq("ba", "ab", &abx).unwrap());
        assert!(matches!(higman_leq("z", "ab", &abx), Err(Error::UnknownLetter(_))));
        let ordered = Alphabet::new("abc", &[('a', 'b'), ('b', 'c')]).unwrap();
        assert!(higman_leq("aa", "cb", &ordered).unwrap());
        assert!(!higman_leq("c", "ab", &ordered).unwrap());
    }
}
