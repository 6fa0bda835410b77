use alloc::vec::Vec;

use crate::seq::{verify_cds, BinarySequence, CdsParams};

/// Published two-level sequences, as `(n, d, sequence)`.
pub const KNOWN_SEQUENCES: [(u64, i64, &str); 7] = [
    (2, -2, "-+"),
    (4, 0, "+++-"),
    (5, 1, "-++++"),
    (6, 2, "-+++++"),
    (7, 3, "-++++++"),
    (8, 4, "-+++++++"),
    (13, 1, "+++++--++-+-+"),
];

/// The (40,13,4) set.
pub const SET_40: [u64; 13] = [1, 2, 3, 5, 6, 9, 14, 15, 18, 20, 25, 27, 35];

/// A known difference set with exactly these parameters, taking the
/// complement of a stored set when that matches instead.
pub fn known_witness(params: &CdsParams) -> Option<Vec<u64>> {
    let (n, _, _) = params.to_u64()?;
    let mut candidates: Vec<Vec<u64>> = KNOWN_SEQUENCES
        .iter()
        .filter(|(m, _, _)| *m == n)
        .map(|(_, _, s)| {
            let seq: BinarySequence = s.parse().expect("stored sequences parse");
            seq.values()
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(i, _)| i as u64)
                .collect()
        })
        .collect();
    if n == 40 {
        candidates.push(SET_40.to_vec());
    }
    for set in candidates {
        let Ok(d) = verify_cds(n, &set) else { continue };
        if d.params() == params {
            return Some(set);
        }
        let c = d.complement();
        if c.params() == params {
            return Some(c.elements().to_vec());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::autocorrelation;

    #[test]
    fn stored_sequences_have_their_d() {
        for (n, d, s) in KNOWN_SEQUENCES {
            let seq: BinarySequence = s.parse().unwrap();
            assert_eq!(seq.n() as u64, n);
            assert_eq!(autocorrelation(&seq).d, Some(d), "{s}");
        }
    }

    #[test]
    fn lookup_matches_either_branch() {
        let p = CdsParams::from_u64(13, 4, 1).unwrap();
        let set = known_witness(&p).unwrap();
        assert_eq!(verify_cds(13, &set).unwrap().params(), &p);
        assert_eq!(known_witness(&p.complement()).unwrap().len(), 9);
        let p40 = CdsParams::from_u64(40, 13, 4).unwrap();
        assert_eq!(known_witness(&p40).unwrap(), SET_40.to_vec());
        assert!(known_witness(&CdsParams::from_u64(7, 3, 1).unwrap()).is_none());
    }
}
