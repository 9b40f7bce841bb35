//! Text formats: structures and partitions.
//!
//! Structure files look like
//!
//! ```text
//! signature 2 2        # arities
//! domain 5
//! rel 0 : 0,1 1,2 3,4
//! rel 1 : 0,0
//! ```
//!
//! `#` starts a comment. Missing `rel` lines are empty relations, a nullary
//! tuple is written `()`, and optional `label <vertex> <name>` lines attach
//! display names. Writing emits non-empty relations with tuples in
//! lexicographic order, so parse/write round trips are byte-exact on output
//! produced by [`write_structure`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::structure::{RelStructure, Signature};

pub fn parse_structure(text: &str) -> Result<RelStructure> {
    let mut signature: Option<Signature> = None;
    let mut domain: Option<usize> = None;
    let mut relations: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let mut words = line.split_whitespace();
        match words.next() {
            Some("signature") => {
                let arities = words
                    .map(|w| w.parse::<usize>().map_err(|_| err("bad arity")))
                    .collect::<Result<Vec<_>>>()?;
                let sig = Signature::new(arities)?;
                relations = vec![Vec::new(); sig.len()];
                signature = Some(sig);
            }
            Some("domain") => {
                let n = words.next().ok_or_else(|| err("missing domain size"))?;
                domain = Some(n.parse().map_err(|_| err("bad domain size"))?);
            }
            Some("rel") => {
                let sig = signature.as_ref().ok_or_else(|| err("rel before signature"))?;
                let idx: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err("bad relation index"))?;
                if idx >= sig.len() {
                    return Err(err("relation index beyond signature"));
                }
                if words.next() != Some(":") {
                    return Err(err("expected ':' after relation index"));
                }
                for tok in words {
                    let tuple = if tok == "()" {
                        Vec::new()
                    } else {
                        tok.split(',')
                            .map(|v| v.parse::<usize>().map_err(|_| err("bad vertex")))
                            .collect::<Result<Vec<_>>>()?
                    };
                    relations[idx].push(tuple);
                }
            }
            Some("label") => {
                let v: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err("bad label vertex"))?;
                let name = words.collect::<Vec<_>>().join(" ");
                labels.push((v, name));
            }
            Some(other) => return Err(err(&format!("unknown directive '{other}'"))),
            None => {}
        }
    }

    let signature = signature.ok_or_else(|| Error::Parse("missing signature line".into()))?;
    let domain = domain.ok_or_else(|| Error::Parse("missing domain line".into()))?;
    let mut r = RelStructure::new(signature, domain, relations)?;
    if !labels.is_empty() {
        let mut names: Vec<String> = (0..domain).map(|v| v.to_string()).collect();
        for (v, name) in labels {
            if v >= domain {
                return Err(Error::VertexOutOfRange { vertex: v, domain_size: domain });
            }
            names[v] = name;
        }
        r = r.with_labels(names)?;
    }
    Ok(r)
}

pub fn write_structure(r: &RelStructure) -> String {
    let mut out = String::new();
    let arities: Vec<String> = r.signature().arities().iter().map(|a| a.to_string()).collect();
    writeln!(out, "signature {}", arities.join(" ")).unwrap();
    writeln!(out, "domain {}", r.domain_size()).unwrap();
    for (i, rel) in r.relations().iter().enumerate() {
        if rel.is_empty() {
            continue;
        }
        write!(out, "rel {i} :").unwrap();
        for t in rel.tuples() {
            if t.is_empty() {
                out.push_str(" ()");
            } else {
                let coords: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                write!(out, " {}", coords.join(",")).unwrap();
            }
        }
        out.push('\n');
    }
    if let Some(labels) = r.labels() {
        for (v, name) in labels.iter().enumerate() {
            writeln!(out, "label {v} {name}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "signature 2 2        # arities, space-separated
domain 5
rel 0 : 0,1 1,2 3,4  # tuples
rel 1 : 0,0
";

    #[test]
    fn parses_sample() {
        let r = parse_structure(SAMPLE).unwrap();
        assert_eq!(r.domain_size(), 5);
        assert_eq!(r.relation(0).len(), 3);
        assert!(r.holds(1, &[0, 0]));
    }

    #[test]
    fn writes_sorted_and_round_trips() {
        let text = "signature 2\ndomain 3\nrel 0 : 2,1 0,1 1,0\n";
        let r = parse_structure(text).unwrap();
        let written = write_structure(&r);
        assert_eq!(written, "signature 2\ndomain 3\nrel 0 : 0,1 1,0 2,1\n");
        assert_eq!(write_structure(&parse_structure(&written).unwrap()), written);
    }

    #[test]
    fn nullary_and_labels() {
        let text = "signature 0 1\ndomain 2\nrel 0 : ()\nrel 1 : 1\nlabel 0 a\nlabel 1 b\n";
        let r = parse_structure(text).unwrap();
        assert!(r.holds(0, &[]));
        assert_eq!(write_structure(&r), text);
    }

    #[test]
    fn reports_errors() {
        assert!(parse_structure("domain 2\n").is_err());
        assert!(parse_structure("signature 2\ndomain 2\nrel 0 : 0,2\n").is_err());
        assert!(parse_structure("signature 2\ndomain 2\nrel 0 : 0\n").is_err());
        assert!(parse_structure("signature 2\ndomain 2\nrel 3 : 0,1\n").is_err());
        assert!(parse_structure("signature 2\ndomain 2\nbogus\n").is_err());
    }
}
