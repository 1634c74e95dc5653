//! Certificate files.
//!
//! One `key: value` line per field, keys in a fixed order, LF line endings.
//! An empty value is written as `key:` with nothing after the colon. The
//! parser accepts exactly what [`to_text`] produces, so any file that parses
//! serializes back to the same bytes.
//!
//! ```text
//! machine: parity_cheat sha256:<64 hex digits> alphabet:strict
//! n: 8
//! checkpoint: 2
//! word1: aaaaAAAA
//! word2: bbaaAABB
//! crossing: LR:p_ee
//! side: right
//! hybrid: aaaaAABB
//! hybrid_reduced: aaBB
//! accept_word2: true
//! accept_hybrid: true
//! steps_word2: 9
//! steps_hybrid: 9
//! ```

use std::fmt::Write as _;

use f2lab_core::adversary::{CounterexampleCertificate, NamedCrossing, Side};
use f2lab_core::free_group::{free_reduce, ReducedWord, Word};
use f2lab_core::simulator::Direction;

pub const KEYS: [&str; 13] = [
    "machine",
    "n",
    "checkpoint",
    "word1",
    "word2",
    "crossing",
    "side",
    "hybrid",
    "hybrid_reduced",
    "accept_word2",
    "accept_hybrid",
    "steps_word2",
    "steps_hybrid",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("certificate line {line}: {message}")]
pub struct CertificateParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> CertificateParseError {
    CertificateParseError {
        line,
        message: message.into(),
    }
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let value = value.to_string();
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

fn crossing_text(c: &[NamedCrossing]) -> String {
    c.iter()
        .map(|x| format!("{}:{}", x.direction, x.state))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn to_text(c: &CounterexampleCertificate) -> String {
    let alphabet = if c.strict_alphabet { "strict" } else { "extended" };
    let mut s = String::new();
    line(&mut s, "machine", format!("{} sha256:{} alphabet:{alphabet}", c.machine_name, c.machine_digest));
    line(&mut s, "n", c.n);
    line(&mut s, "checkpoint", c.checkpoint);
    line(&mut s, "word1", &c.word1);
    line(&mut s, "word2", &c.word2);
    line(&mut s, "crossing", crossing_text(&c.crossing));
    line(&mut s, "side", c.side.as_str());
    line(&mut s, "hybrid", &c.hybrid);
    line(&mut s, "hybrid_reduced", &c.hybrid_reduced);
    line(&mut s, "accept_word2", c.accept_word2);
    line(&mut s, "accept_hybrid", c.accept_hybrid);
    line(&mut s, "steps_word2", c.steps_word2);
    line(&mut s, "steps_hybrid", c.steps_hybrid);
    s
}

fn number<T: std::str::FromStr>(ln: usize, v: &str) -> Result<T, CertificateParseError> {
    let canonical = !v.is_empty() && v.bytes().all(|b| b.is_ascii_digit()) && (v == "0" || !v.starts_with('0'));
    if !canonical {
        return Err(err(ln, format!("expected a decimal number, found {v:?}")));
    }
    v.parse().map_err(|_| err(ln, format!("number out of range: {v}")))
}

fn boolean(ln: usize, v: &str) -> Result<bool, CertificateParseError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(err(ln, format!("expected true or false, found {v:?}"))),
    }
}

fn word(ln: usize, v: &str) -> Result<Word, CertificateParseError> {
    v.parse().map_err(|e| err(ln, format!("{e}")))
}

fn name_ok(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_graphic() && b != b',' && b != b'#')
}

fn machine(ln: usize, v: &str) -> Result<(String, String, bool), CertificateParseError> {
    let bad = || err(ln, "expected `<name> sha256:<hex> alphabet:strict|extended`");
    let parts: Vec<&str> = v.split(' ').collect();
    let [name, digest, alphabet] = parts[..] else {
        return Err(bad());
    };
    let digest = digest.strip_prefix("sha256:").ok_or_else(bad)?;
    let hex_ok = digest.len() == 64 && digest.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
    if !name_ok(name) || !hex_ok {
        return Err(bad());
    }
    let strict = match alphabet {
        "alphabet:strict" => true,
        "alphabet:extended" => false,
        _ => return Err(bad()),
    };
    Ok((name.to_string(), digest.to_string(), strict))
}

fn crossing(ln: usize, v: &str) -> Result<Vec<NamedCrossing>, CertificateParseError> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|tok| {
            let (d, state) = tok
                .split_once(':')
                .ok_or_else(|| err(ln, format!("bad crossing token {tok:?}")))?;
            let direction = Direction::parse(d).ok_or_else(|| err(ln, format!("bad direction {d:?}")))?;
            if !name_ok(state) || state.contains(':') {
                return Err(err(ln, format!("bad state name {state:?}")));
            }
            Ok(NamedCrossing {
                direction,
                state: state.to_string(),
            })
        })
        .collect()
}

pub fn from_text(text: &str) -> Result<CounterexampleCertificate, CertificateParseError> {
    let Some(body) = text.strip_suffix('\n') else {
        return Err(err(0, "file must end with a line feed"));
    };
    let lines: Vec<&str> = body.split('\n').collect();
    if lines.len() != KEYS.len() {
        return Err(err(0, format!("expected {} lines, found {}", KEYS.len(), lines.len())));
    }
    let mut values = Vec::with_capacity(KEYS.len());
    for (i, (l, key)) in lines.iter().zip(KEYS).enumerate() {
        let ln = i + 1;
        let rest = l
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| err(ln, format!("expected key `{key}`")))?;
        let value = if rest.is_empty() {
            ""
        } else {
            rest.strip_prefix(' ')
                .filter(|v| !v.is_empty())
                .ok_or_else(|| err(ln, "expected `key: value` or `key:`"))?
        };
        if value.ends_with(' ') || value.contains('\r') {
            return Err(err(ln, "trailing whitespace"));
        }
        values.push(value);
    }

    let (machine_name, machine_digest, strict_alphabet) = machine(1, values[0])?;
    let side = Side::parse(values[6]).ok_or_else(|| err(7, "side must be left or right"))?;
    let reduced_word = word(9, values[8])?;
    let hybrid_reduced: ReducedWord = free_reduce(&reduced_word);
    if hybrid_reduced.len() != reduced_word.len() {
        return Err(err(9, "hybrid_reduced is not freely reduced"));
    }
    Ok(CounterexampleCertificate {
        machine_name,
        machine_digest,
        strict_alphabet,
        n: number(2, values[1])?,
        checkpoint: number(3, values[2])?,
        word1: word(4, values[3])?,
        word2: word(5, values[4])?,
        crossing: crossing(6, values[5])?,
        side,
        hybrid: word(8, values[7])?,
        hybrid_reduced,
        accept_word2: boolean(10, values[9])?,
        accept_hybrid: boolean(11, values[10])?,
        steps_word2: number(12, values[11])?,
        steps_hybrid: number(13, values[12])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CounterexampleCertificate {
        CounterexampleCertificate {
            machine_name: "parity_cheat".into(),
            machine_digest: "0".repeat(64),
            strict_alphabet: true,
            n: 8,
            checkpoint: 2,
            word1: "aaaaAAAA".parse().unwrap(),
            word2: "bbaaAABB".parse().unwrap(),
            crossing: vec![NamedCrossing {
                direction: Direction::LR,
                state: "p_ee".into(),
            }],
            side: Side::Right,
            hybrid: "aaaaAABB".parse().unwrap(),
            hybrid_reduced: "aaBB".parse().unwrap(),
            accept_word2: true,
            accept_hybrid: true,
            steps_word2: 9,
            steps_hybrid: 9,
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        let text = to_text(&c);
        assert!(text.starts_with("machine: parity_cheat sha256:000"));
        assert!(text.contains("\ncrossing: LR:p_ee\n"));
        assert_eq!(from_text(&text).unwrap(), c);
        assert_eq!(to_text(&from_text(&text).unwrap()), text);
    }

    #[test]
    fn empty_values() {
        let mut c = sample();
        c.crossing.clear();
        c.word1 = Word::empty();
        let text = to_text(&c);
        assert!(text.contains("\nword1:\n"));
        assert!(text.contains("\ncrossing:\n"));
        assert_eq!(to_text(&from_text(&text).unwrap()), text);
    }

    #[test]
    fn rejects_non_canonical_text() {
        let text = to_text(&sample());
        let cases = [
            text.replace("n: 8", "n: 08"),
            text.replace("n: 8", "n:  8"),
            text.replace("side: right", "side: Right"),
            text.replace("accept_word2: true", "accept_word2: yes"),
            text.replace("hybrid_reduced: aaBB", "hybrid_reduced: aaBbBB"),
            text.replace("word1:", "word_1:"),
            text.replace('\n', "\r\n"),
            text.trim_end().to_string(),
            text.replacen("machine: parity_cheat", "machine: parity cheat", 1),
            format!("{text}\n"),
        ];
        for (i, t) in cases.iter().enumerate() {
            assert!(from_text(t).is_err(), "case {i} parsed");
        }
        let swapped = text.replace("n: 8\ncheckpoint: 2", "checkpoint: 2\nn: 8");
        assert!(from_text(&swapped).is_err());
    }
}
