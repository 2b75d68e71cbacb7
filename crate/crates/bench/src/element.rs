use powersort::Sortable;

/// Element types the harness can sort.
pub trait Element: Sortable + Send + Sync + std::fmt::Debug {
    const NAME: &'static str;

    fn from_key(key: i64, index: usize) -> Self;

    fn key(&self) -> i64;

    /// Original position, for element types that carry it.
    fn index(&self) -> Option<u64> {
        None
    }
}

impl Element for i32 {
    const NAME: &'static str = "int";

    fn from_key(key: i64, _: usize) -> Self {
        key as i32
    }

    fn key(&self) -> i64 {
        *self as i64
    }
}

/// A 16-byte record: a long key and a payload holding the original index.
/// Ordered by key only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub key: i64,
    pub index: u64,
}

impl PartialOrd for Record {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Record {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl Sortable for Record {
    fn sentinel() -> Option<Self> {
        Some(Record {
            key: i64::MAX,
            index: u64::MAX,
        })
    }
}

impl Element for Record {
    const NAME: &'static str = "record";

    fn from_key(key: i64, index: usize) -> Self {
        Record {
            key,
            index: index as u64,
        }
    }

    fn key(&self) -> i64 {
        self.key
    }

    fn index(&self) -> Option<u64> {
        Some(self.index)
    }
}

pub fn build<E: Element>(keys: &[i64]) -> Vec<E> {
    keys.iter()
        .enumerate()
        .map(|(i, &k)| E::from_key(k, i))
        .collect()
}

fn mix(x: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-independent fingerprint of a multiset of elements.
pub fn checksum<E: Element>(v: &[E]) -> (u64, u64) {
    v.iter().fold((0u64, 0u64), |(s, h), e| {
        let k = e.key() as u64 ^ e.index().map_or(0, |i| i.rotate_left(32));
        (s.wrapping_add(k), h.wrapping_add(mix(k)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("output is not sorted at position {0}")]
    NotSorted(usize),
    #[error("output is not a permutation of the input")]
    NotPermutation,
    #[error("equal keys out of original order at position {0}")]
    Unstable(usize),
}

/// Checks sortedness, the permutation fingerprint and, when elements carry
/// their original index, stability.
pub fn verify<E: Element>(
    output: &[E],
    input_checksum: (u64, u64),
) -> std::result::Result<(), VerifyError> {
    for (i, w) in output.windows(2).enumerate() {
        if w[0].key() > w[1].key() {
            return Err(VerifyError::NotSorted(i + 1));
        }
        if w[0].key() == w[1].key() {
            if let (Some(a), Some(b)) = (w[0].index(), w[1].index()) {
                if a >= b {
                    return Err(VerifyError::Unstable(i + 1));
                }
            }
        }
    }
    if checksum(output) != input_checksum {
        return Err(VerifyError::NotPermutation);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_is_sixteen_bytes() {
        assert_eq!(std::mem::size_of::<Record>(), 16);
    }

    #[test]
    fn verify_catches_each_failure() {
        let input: Vec<Record> = build(&[2, 1, 1]);
        let sum = checksum(&input);
        let good = [input[1], input[2], input[0]];
        assert_eq!(verify(&good, sum), Ok(()));
        assert_eq!(
            verify(&[input[2], input[1], input[0]], sum),
            Err(VerifyError::Unstable(1))
        );
        assert_eq!(
            verify(&[input[0], input[1], input[2]], sum),
            Err(VerifyError::NotSorted(1))
        );
        let forged = Record { key: 2, index: 5 };
        assert_eq!(
            verify(&[input[1], input[2], forged], sum),
            Err(VerifyError::NotPermutation)
        );

        let ints: Vec<i32> = build(&[3, 1]);
        assert_eq!(verify(&[1, 3], checksum(&ints)), Ok(()));
        assert_eq!(
            verify(&[1, 4], checksum(&ints)),
            Err(VerifyError::NotPermutation)
        );
    }
}
