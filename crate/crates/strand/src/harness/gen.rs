//! Deterministic instance generators driven by a single seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core_strings::SCSInstance;
use crate::tao::TAOInstance;
use crate::{Error, Result};

/// Symbols used by generated instances, all printable and comment-safe.
const SYMBOLS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Which problem to generate an instance for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Scs,
    Tao,
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scs" => Ok(ProblemKind::Scs),
            "tao" => Ok(ProblemKind::Tao),
            other => Err(Error::usage(format!(
                "unknown problem kind {other:?}, expected scs or tao"
            ))),
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProblemKind::Scs => "scs",
            ProblemKind::Tao => "tao",
        })
    }
}

/// Generator parameters; one seed fixes the full output.
#[derive(Debug, Clone)]
pub struct GenSpec {
    pub kind: ProblemKind,
    /// Number of dictionary strings.
    pub n: usize,
    /// String lengths are drawn uniformly from min_len..=max_len.
    pub min_len: usize,
    pub max_len: usize,
    /// Alphabet size; symbols come from a fixed printable pool.
    pub alphabet: u16,
    pub seed: u64,
    /// Target text length (the text may overshoot when planted).
    pub text_len: usize,
    /// Chain dictionary strings into the text so it stays feasible.
    pub planted: bool,
}

impl GenSpec {
    /// Checks size positivity and the supported alphabet range.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::usage("n must be positive"));
        }
        if self.min_len == 0 || self.min_len > self.max_len {
            return Err(Error::usage("need 1 <= min-len <= max-len"));
        }
        if self.alphabet < 2 || self.alphabet as usize > SYMBOLS.len() {
            return Err(Error::usage(format!(
                "alphabet size must be in 2..={}",
                SYMBOLS.len()
            )));
        }
        if self.kind == ProblemKind::Tao && self.text_len == 0 {
            return Err(Error::usage("text-len must be positive"));
        }
        Ok(())
    }
}

/// One random string over the first `alphabet` symbols of the pool.
pub fn random_string(rng: &mut ChaCha8Rng, len: usize, alphabet: u16) -> Vec<u8> {
    (0..len)
        .map(|_| SYMBOLS[rng.gen_range(0..alphabet as usize)])
        .collect()
}

/// Generates a superstring instance.
pub fn gen_scs(spec: &GenSpec) -> Result<SCSInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let strings = (0..spec.n)
        .map(|_| {
            let len = rng.gen_range(spec.min_len..=spec.max_len);
            random_string(&mut rng, len, spec.alphabet)
        })
        .collect();
    SCSInstance::new(strings)
}

/// Generates a text-assembling instance, planted-feasible when asked.
pub fn gen_tao(spec: &GenSpec) -> Result<TAOInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let dict: Vec<Vec<u8>> = (0..spec.n)
        .map(|_| {
            let len = rng.gen_range(spec.min_len..=spec.max_len);
            random_string(&mut rng, len, spec.alphabet)
        })
        .collect();
    let text = if spec.planted {
        plant_text(&mut rng, &dict, spec.text_len)
    } else {
        random_string(&mut rng, spec.text_len, spec.alphabet)
    };
    TAOInstance::new(text, dict)
}

/// Chains random dictionary strings, overlapping only where the current tail
/// already equals the next piece's prefix, so every placed piece survives
/// into the final text and the instance is feasible by construction.
fn plant_text(rng: &mut ChaCha8Rng, dict: &[Vec<u8>], target: usize) -> Vec<u8> {
    let mut text = dict[rng.gen_range(0..dict.len())].clone();
    while text.len() < target {
        let piece = &dict[rng.gen_range(0..dict.len())];
        let covered = text.len();
        // Overlaps swallowing the whole piece are excluded so the text grows.
        let max_back = if piece.len() <= covered {
            piece.len() - 1
        } else {
            covered
        };
        let valid: Vec<usize> = (0..=max_back)
            .filter(|&b| text[covered - b..] == piece[..b])
            .collect();
        let back = valid[rng.gen_range(0..valid.len())];
        text.extend_from_slice(&piece[back..]);
    }
    text
}

/// File form of the text: a single line.
pub fn text_to_string(inst: &TAOInstance) -> String {
    let mut out = String::from_utf8(inst.text().to_vec()).expect("generated text is printable");
    out.push('\n');
    out
}

/// File form of the dictionary: one string per line.
pub fn dict_to_string(inst: &TAOInstance) -> String {
    let mut out = String::new();
    for s in inst.dict() {
        out.push_str(std::str::from_utf8(s).expect("generated dictionary is printable"));
        out.push('\n');
    }
    out
}
