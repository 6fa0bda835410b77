use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("empty sequence")]
    Empty,
    #[error("entry {index} is {value}, expected -1 or +1")]
    BadValue { index: usize, value: i64 },
    #[error("unexpected character {ch:?} at position {index}")]
    BadChar { index: usize, ch: char },
}

/// One period of a `{-1, +1}` sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySequence {
    values: Vec<i8>,
}

impl BinarySequence {
    pub fn new(values: Vec<i8>) -> Result<Self, SeqError> {
        if values.is_empty() {
            return Err(SeqError::Empty);
        }
        if let Some((index, &v)) = values.iter().enumerate().find(|(_, v)| v.abs() != 1) {
            return Err(SeqError::BadValue {
                index,
                value: v as i64,
            });
        }
        Ok(BinarySequence { values })
    }

    pub fn from_i64(values: &[i64]) -> Result<Self, SeqError> {
        if let Some((index, &v)) = values.iter().enumerate().find(|(_, v)| v.abs() != 1) {
            return Err(SeqError::BadValue { index, value: v });
        }
        Self::new(values.iter().map(|&v| v as i8).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Cyclic shift: entry `i` of the result is entry `i + t` of `self`.
    pub fn shifted(&self, t: usize) -> Self {
        let n = self.n();
        BinarySequence {
            values: (0..n).map(|i| self.values[(i + t) % n]).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        BinarySequence {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl FromStr for BinarySequence {
    type Err = SeqError;

    /// Accepts `+` and `-` (or the Unicode minus sign); whitespace and commas are skipped.
    fn from_str(s: &str) -> Result<Self, SeqError> {
        let mut values = Vec::new();
        for (index, ch) in s.chars().enumerate() {
            match ch {
                '+' => values.push(1),
                '-' | '\u{2212}' => values.push(-1),
                c if c.is_whitespace() || c == ',' => {}
                ch => return Err(SeqError::BadChar { index, ch }),
            }
        }
        Self::new(values)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .values
            .iter()
            .map(|&v| if v > 0 { '+' } else { '-' })
            .collect();
        f.write_str(&s)
    }
}

/// `C(0..n)` of a sequence and its off-peak value when constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutocorrelationProfile {
    pub n: usize,
    pub c: Vec<i64>,
    /// Common off-peak value; `None` when `n == 1` or the profile is not two-level.
    pub d: Option<i64>,
}

impl AutocorrelationProfile {
    pub fn is_two_level(&self) -> bool {
        self.d.is_some()
    }
}

pub fn autocorrelation(seq: &BinarySequence) -> AutocorrelationProfile {
    let n = seq.n();
    let a = seq.values();
    let c: Vec<i64> = (0..n)
        .map(|t| {
            (0..n)
                .map(|i| (a[i] as i64) * (a[(i + t) % n] as i64))
                .sum()
        })
        .collect();
    let d = match c.get(1) {
        Some(&first) if c[1..].iter().all(|&x| x == first) => Some(first),
        _ => None,
    };
    AutocorrelationProfile { n, c, d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn profiles() {
        let s: BinarySequence = "-++++".parse().unwrap();
        let p = autocorrelation(&s);
        assert_eq!(p.c, vec![5, 1, 1, 1, 1]);
        assert_eq!(p.d, Some(1));

        let s13 = BinarySequence::from_i64(&[1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1]).unwrap();
        let p = autocorrelation(&s13);
        assert_eq!(p.c[0], 13);
        assert_eq!(p.d, Some(1));

        let p = autocorrelation(&"++++".parse().unwrap());
        assert_eq!(p.c, vec![4, 4, 4, 4]);
        assert_eq!(p.d, Some(4));

        let p = autocorrelation(&"+--".parse().unwrap());
        assert_eq!(p.d, Some(-1));
        let p = autocorrelation(&"++-+-".parse().unwrap());
        assert_eq!(p.d, None);
        assert_eq!(autocorrelation(&"+".parse().unwrap()).d, None);
    }

    #[test]
    fn text_form() {
        let s: BinarySequence = "−+ + +,+".parse().unwrap();
        assert_eq!(s.to_string(), "-++++");
        assert_eq!("".parse::<BinarySequence>(), Err(SeqError::Empty));
        assert!(matches!("+x".parse::<BinarySequence>(), Err(SeqError::BadChar { index: 1, .. })));
        assert!(matches!(
            BinarySequence::from_i64(&[1, 0]),
            Err(SeqError::BadValue { index: 1, value: 0 })
        ));
    }

    fn arb_seq() -> impl Strategy<Value = BinarySequence> {
        prop::collection::vec(prop::bool::ANY, 1..=64).prop_map(|bits| {
            BinarySequence::new(bits.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn congruent_to_n_mod_4_and_symmetric(s in arb_seq()) {
            let p = autocorrelation(&s);
            let n = s.n() as i64;
            prop_assert_eq!(p.c[0], n);
            for t in 0..s.n() {
                prop_assert_eq!((p.c[t] - n).rem_euclid(4), 0);
                if t > 0 {
                    prop_assert_eq!(p.c[t], p.c[s.n() - t]);
                }
            }
        }

        #[test]
        fn text_roundtrip(s in arb_seq()) {
            prop_assert_eq!(s.to_string().parse::<BinarySequence>().unwrap(), s);
        }
    }
}
