/// Size guards for exhaustive work.
///
/// `max_q_pow` bounds `q^n` for anything that walks every vector of an
/// ambient space (and for the extension fields the partition
/// constructions build). `max_subspaces` bounds the number of subspaces
/// the oracle is willing to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_q_pow: u64,
    pub max_subspaces: u64,
}

pub const DEFAULT_MAX_Q_POW: u64 = 1 << 20;
pub const DEFAULT_MAX_SUBSPACES: u64 = 100_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_q_pow: DEFAULT_MAX_Q_POW,
            max_subspaces: DEFAULT_MAX_SUBSPACES,
        }
    }
}

impl Limits {
    pub fn with_max_q_pow(mut self, bound: u64) -> Self {
        self.max_q_pow = bound;
        self
    }

    pub(crate) fn check_q_pow(&self, q: u64, n: usize) -> crate::Result<u64> {
        match checked_pow(q, n) {
            Some(v) if v <= self.max_q_pow => Ok(v),
            Some(v) => Err(crate::Error::TooLarge {
                what: "q^n",
                size: v.to_string(),
                bound: self.max_q_pow,
            }),
            None => Err(crate::Error::TooLarge {
                what: "q^n",
                size: format!("{q}^{n}"),
                bound: self.max_q_pow,
            }),
        }
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
