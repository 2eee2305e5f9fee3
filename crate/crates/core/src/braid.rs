//! Words in the cylinder braid group on `n` strands.
//!
//! Generators are indexed `0..n-1`. Index 0 is the cylinder generator
//! (written `y` in the text format), indices `k >= 1` are the usual strand
//! crossings. The defining relations are far commutation, the braid
//! relation for adjacent crossings, and the four-term relation
//! `X0 X1 X0 X1 = X1 X0 X1 X0`.
//!
//! No word-problem solver is attempted: words are only ever compared
//! through quotient invariants (signed permutations, algebra images).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::fmt;

/// One letter: a generator index and a power of plus or minus one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub power: i8,
}

impl Letter {
    pub fn new(index: usize, power: i8) -> Letter {
        assert!(power == 1 || power == -1);
        Letter { index, power }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            index: self.index,
            power: -self.power,
        }
    }
}

/// A word in the cylinder braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    Parse { position: usize, message: String },
    Usage(String),
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::Parse { position, message } => {
                write!(f, "parse error at token {position}: {message}")
            }
            BraidError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for BraidError {}

impl BraidWord {
    pub fn identity(strands: usize) -> BraidWord {
        assert!(strands >= 1);
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn new(strands: usize, letters: Vec<Letter>) -> BraidWord {
        for l in &letters {
            assert!(l.index < strands, "letter index out of range");
        }
        BraidWord { strands, letters }
    }

    /// Parses the token format: `y` and `y'` for the cylinder generator and
    /// its inverse, signed integers `k`/`-k` (1 <= k <= n-1) for crossings.
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let letter = match tok {
                "y" => Letter::new(0, 1),
                "y'" => Letter::new(0, -1),
                _ => match tok.parse::<i64>() {
                    Ok(k) if k != 0 => {
                        let idx = k.unsigned_abs() as usize;
                        if idx >= strands {
                            return Err(BraidError::Parse {
                                position: pos,
                                message: format!(
                                    "generator {idx} out of range for {strands} strands"
                                ),
                            });
                        }
                        Letter::new(idx, if k > 0 { 1 } else { -1 })
                    }
                    _ => {
                        return Err(BraidError::Parse {
                            position: pos,
                            message: format!("unrecognized token `{tok}`"),
                        })
                    }
                },
            };
            letters.push(letter);
        }
        Ok(BraidWord { strands, letters })
    }

    /// Renders in the same token format accepted by [`BraidWord::parse`].
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|l| match (l.index, l.power) {
                (0, 1) => "y".to_string(),
                (0, _) => "y'".to_string(),
                (k, 1) => k.to_string(),
                (k, _) => format!("-{k}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Removes adjacent cancelling pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if let Some(&last) = out.last() {
                if last.index == l.index && last.power == -l.power {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Sum of powers over letters with index >= 1; the cylinder generator
    /// contributes zero.
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.index >= 1)
            .map(|l| l.power as i64)
            .sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// The image in the signed-permutation quotient.
    pub fn signed_permutation(&self) -> SignedPermutation {
        let mut p = SignedPermutation::identity(self.strands);
        for l in &self.letters {
            p = p.compose(&SignedPermutation::generator(self.strands, l.index));
        }
        p
    }

    pub fn markov_move(&self, mv: &MarkovMove) -> Result<BraidWord, BraidError> {
        match mv {
            MarkovMove::Conjugate(a) => {
                if a.strands != self.strands {
                    return Err(BraidError::Usage(
                        "conjugator strand count mismatch".to_string(),
                    ));
                }
                Ok(a.concat(self).concat(&a.inverse()))
            }
            MarkovMove::StabilizePos => Ok(self.stabilize(1)),
            MarkovMove::StabilizeNeg => Ok(self.stabilize(-1)),
            MarkovMove::Destabilize => self.destabilize(),
        }
    }

    fn stabilize(&self, power: i8) -> BraidWord {
        let n = self.strands;
        let mut letters = self.letters.clone();
        letters.push(Letter::new(n, power));
        BraidWord {
            strands: n + 1,
            letters,
        }
    }

    fn destabilize(&self) -> Result<BraidWord, BraidError> {
        let n = self.strands;
        if n < 2 {
            return Err(BraidError::Usage(
                "cannot destabilize a one-strand word".to_string(),
            ));
        }
        let top = n - 1;
        let last = self
            .letters
            .last()
            .ok_or_else(|| BraidError::Usage("cannot destabilize the empty word".to_string()))?;
        let occurrences = self.letters.iter().filter(|l| l.index == top).count();
        if last.index != top || occurrences != 1 {
            return Err(BraidError::Usage(format!(
                "destabilize requires the last letter to be the only occurrence of generator {top}"
            )));
        }
        let letters = self.letters[..self.letters.len() - 1].to_vec();
        Ok(BraidWord {
            strands: n - 1,
            letters,
        })
    }

    /// Applies `steps` random defining-relation rewrites. The output
    /// represents the same group element; deterministic for a given seed.
    pub fn relation_shuffle(&self, steps: usize, seed: u64) -> BraidWord {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = self.clone();
        for _ in 0..steps {
            w = shuffle_step(&w, &mut rng);
        }
        w
    }
}

fn gen_range(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

fn shuffle_step(w: &BraidWord, rng: &mut ChaCha8Rng) -> BraidWord {
    let n = w.strands;
    let mut candidates: Vec<BraidWord> = Vec::new();

    // free insertion at a random position
    {
        let pos = gen_range(rng, w.letters.len() + 1);
        let idx = gen_range(rng, n);
        let pw = if rng.next_u32().is_multiple_of(2) {
            1
        } else {
            -1
        };
        let mut letters = w.letters.clone();
        letters.insert(pos, Letter::new(idx, -pw));
        letters.insert(pos, Letter::new(idx, pw));
        candidates.push(BraidWord {
            strands: n,
            letters,
        });
    }

    // free cancellation
    for i in 0..w.letters.len().saturating_sub(1) {
        if w.letters[i].index == w.letters[i + 1].index
            && w.letters[i].power == -w.letters[i + 1].power
        {
            let mut letters = w.letters.clone();
            letters.drain(i..i + 2);
            candidates.push(BraidWord {
                strands: n,
                letters,
            });
        }
    }

    // far commutation swaps
    for i in 0..w.letters.len().saturating_sub(1) {
        let (a, b) = (w.letters[i], w.letters[i + 1]);
        if a.index.abs_diff(b.index) > 1 {
            let mut letters = w.letters.clone();
            letters.swap(i, i + 1);
            candidates.push(BraidWord {
                strands: n,
                letters,
            });
        }
    }

    // braid relation on positive or negative triples: X_i X_j X_i -> X_j X_i X_j
    for i in 0..w.letters.len().saturating_sub(2) {
        let (a, b, c) = (w.letters[i], w.letters[i + 1], w.letters[i + 2]);
        if a.index >= 1
            && b.index >= 1
            && a.index.abs_diff(b.index) == 1
            && c.index == a.index
            && a.power == b.power
            && b.power == c.power
        {
            let mut letters = w.letters.clone();
            letters[i] = Letter::new(b.index, b.power);
            letters[i + 1] = Letter::new(a.index, a.power);
            letters[i + 2] = Letter::new(b.index, b.power);
            candidates.push(BraidWord {
                strands: n,
                letters,
            });
        }
    }

    // four-term relation: X0 X1 X0 X1 <-> X1 X0 X1 X0 (same sign throughout)
    for i in 0..w.letters.len().saturating_sub(3) {
        let q = &w.letters[i..i + 4];
        let same_sign = q.iter().all(|l| l.power == q[0].power);
        let pat_a = q[0].index == 0 && q[1].index == 1 && q[2].index == 0 && q[3].index == 1;
        let pat_b = q[0].index == 1 && q[1].index == 0 && q[2].index == 1 && q[3].index == 0;
        if n >= 2 && same_sign && (pat_a || pat_b) {
            let mut letters = w.letters.clone();
            for j in 0..4 {
                let old = letters[i + j];
                letters[i + j] = Letter::new(1 - old.index, old.power);
            }
            candidates.push(BraidWord {
                strands: n,
                letters,
            });
        }
    }

    let k = gen_range(rng, candidates.len());
    candidates.swap_remove(k)
}

/// Image of a braid word in the signed-permutation group. Entry `images[i]`
/// is the signed image of strand position `i+1`; the sign records a strand
/// passing the fixed line an odd number of times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            images: (1..=n as i32).collect(),
        }
    }

    /// Generator images: index 0 flips the sign of position 1, index k
    /// transposes positions k and k+1.
    pub fn generator(n: usize, index: usize) -> SignedPermutation {
        let mut p = SignedPermutation::identity(n);
        if index == 0 {
            p.images[0] = -p.images[0];
        } else {
            assert!(index < n);
            p.images.swap(index - 1, index);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n(), other.n());
        let images = (0..self.n())
            .map(|i| {
                let mid = self.images[i];
                let sign = mid.signum();
                let out = other.images[(mid.abs() - 1) as usize];
                sign * out
            })
            .collect();
        SignedPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i32 + 1)
    }
}


/// A Markov-type move on braid words.
#[derive(Debug, Clone)]
pub enum MarkovMove {
    Conjugate(BraidWord),
    StabilizePos,
    StabilizeNeg,
    Destabilize,
}
