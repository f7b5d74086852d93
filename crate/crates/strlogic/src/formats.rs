//! Text formats for formulas, grammars, groupoids, automata and transducers.
//!
//! Every format is line-oriented. Blank lines and lines starting with `#`
//! are skipped (grammar files keep `#` rules that contain `->`). The writers
//! are the `Display` impls of the corresponding core types, and the readers
//! here accept their output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use strlogic_core::automata::Nfa;
use strlogic_core::groupoid::{Groupoid, WordProblem};
use strlogic_core::transducer::Nft;
use strlogic_core::{parse_formula_with, Alphabet, Error, Formula, LanguageEnv};

pub use strlogic_core::grammar::parse_grammar;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: Error },
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_owned(), source })
}

/// Reads and parses a file, attaching the path to any error.
pub fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, Error>) -> Result<T, FormatError> {
    let text = read_file(path)?;
    parse(&text).map_err(|source| FormatError::Parse { path: path.to_owned(), source })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: usize, what: impl std::fmt::Display) -> Error {
    Error::Malformed(format!("line {line}: {what}"))
}

fn single_char(line: usize, tok: &str) -> Result<char, Error> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(malformed(line, format!("`{tok}` is not a single symbol"))),
    }
}

/// A formula file: optional `alphabet: (a,b)` header, then the formula,
/// which may span several lines.
#[derive(Debug, Clone)]
pub struct FormulaFile {
    pub alphabet: Option<Alphabet>,
    pub text: String,
}

impl FormulaFile {
    pub fn parse(source: &str) -> Result<Self, Error> {
        let mut alphabet = None;
        let mut body = Vec::new();
        for (_, line) in content_lines(source) {
            if let Some(rest) = line.strip_prefix("alphabet:") {
                alphabet = Some(Alphabet::parse(rest)?);
            } else {
                body.push(line);
            }
        }
        if body.is_empty() {
            return Err(Error::Malformed("formula file holds no formula".into()));
        }
        Ok(FormulaFile { alphabet, text: body.join(" ") })
    }

    /// Parses the formula against `sigma`, or the header alphabet, or
    /// without symbol checking when neither is known.
    pub fn formula(&self, sigma: Option<&Alphabet>, env: &LanguageEnv) -> Result<Formula, Error> {
        parse_formula_with(&self.text, sigma.or(self.alphabet.as_ref()), env)
    }
}

/// `elements: a b c`, one row of products per element, `accepting: a c`.
pub fn parse_groupoid(source: &str) -> Result<WordProblem, Error> {
    let mut elements: Option<Vec<char>> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut accepting: Option<Vec<usize>> = None;
    for (no, line) in content_lines(source) {
        if let Some(rest) = line.strip_prefix("elements:") {
            let syms = rest.split_whitespace().map(|t| single_char(no, t)).collect::<Result<_, _>>()?;
            elements = Some(syms);
            continue;
        }
        let elems = elements.as_ref().ok_or_else(|| malformed(no, "expected `elements:` first"))?;
        let lookup = |tok: &str| -> Result<usize, Error> {
            let c = single_char(no, tok)?;
            elems.iter().position(|&e| e == c).ok_or(Error::UnknownSymbol(c))
        };
        if let Some(rest) = line.strip_prefix("accepting:") {
            accepting = Some(rest.split_whitespace().map(lookup).collect::<Result<_, _>>()?);
        } else {
            rows.push(line.split_whitespace().map(lookup).collect::<Result<_, _>>()?);
        }
    }
    let elements = elements.ok_or_else(|| Error::Malformed("missing `elements:` line".into()))?;
    let g = Groupoid::new(Alphabet::new(elements)?, rows)?;
    WordProblem::new(g, accepting.unwrap_or_default())
}

/// States named on `states:` lines keep their order; others are numbered
/// in order of first mention.
#[derive(Default)]
struct StateNames {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl StateNames {
    fn id(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.names.len() - 1
    }
}

struct MachineText<'a> {
    alphabet: Option<Alphabet>,
    output: Option<Alphabet>,
    states: StateNames,
    initial: Vec<usize>,
    finals: Vec<usize>,
    trans: Vec<(usize, usize, &'a str, usize)>,
}

fn parse_machine(source: &str) -> Result<MachineText<'_>, Error> {
    let mut m = MachineText {
        alphabet: None,
        output: None,
        states: StateNames::default(),
        initial: Vec::new(),
        finals: Vec::new(),
        trans: Vec::new(),
    };
    for (no, line) in content_lines(source) {
        let (key, rest) = line.split_once(':').ok_or_else(|| malformed(no, "expected `key: value`"))?;
        match key.trim() {
            "alphabet" => m.alphabet = Some(Alphabet::parse(rest)?),
            "output" => m.output = Some(Alphabet::parse(rest)?),
            "states" => rest.split_whitespace().for_each(|s| {
                m.states.id(s);
            }),
            "initial" => m.initial.extend(rest.split_whitespace().map(|s| m.states.id(s))),
            "final" => m.finals.extend(rest.split_whitespace().map(|s| m.states.id(s))),
            "trans" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [from, label, to] = toks[..] else {
                    return Err(malformed(no, "expected `trans: q a r`"));
                };
                let (from, to) = (m.states.id(from), m.states.id(to));
                m.trans.push((no, from, label, to));
            }
            other => return Err(malformed(no, format!("unknown key `{other}`"))),
        }
    }
    if m.initial.is_empty() {
        return Err(Error::Malformed("missing `initial:` line".into()));
    }
    Ok(m)
}

fn infer_alphabet(given: Option<Alphabet>, used: impl Iterator<Item = char>) -> Result<Alphabet, Error> {
    match given {
        Some(a) => Ok(a),
        None => {
            let mut seen: Vec<char> = Vec::new();
            for c in used {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            Alphabet::new(seen)
        }
    }
}

fn letter(alphabet: &Alphabet, line: usize, tok: &str) -> Result<usize, Error> {
    let c = single_char(line, tok)?;
    alphabet.index_of(c).ok_or(Error::UnknownSymbol(c))
}

/// `alphabet:` (optional, else inferred), `states:`, `initial:`, `final:`,
/// `trans: q a r`.
pub fn parse_nfa(source: &str) -> Result<Nfa, Error> {
    let m = parse_machine(source)?;
    let used = m.trans.iter().flat_map(|(_, _, l, _)| l.chars());
    let alphabet = infer_alphabet(m.alphabet.clone(), used)?;
    let mut nfa = Nfa::with_names(alphabet.clone(), m.states.names.clone());
    for &q in &m.initial {
        nfa.set_initial(q)?;
    }
    for &q in &m.finals {
        nfa.set_final(q, true)?;
    }
    for &(no, from, label, to) in &m.trans {
        nfa.add_transition(from, letter(&alphabet, no, label)?, to)?;
    }
    Ok(nfa)
}

/// The automaton format with an `output:` alphabet and `trans: q a/b r`.
pub fn parse_nft(source: &str) -> Result<Nft, Error> {
    let m = parse_machine(source)?;
    if m.initial.len() != 1 {
        return Err(Error::Malformed("a transducer has exactly one initial state".into()));
    }
    let mut labels = Vec::with_capacity(m.trans.len());
    for &(no, from, label, to) in &m.trans {
        let (a, b) = label.split_once('/').ok_or_else(|| malformed(no, "expected `a/b`"))?;
        labels.push((no, from, a, b, to));
    }
    let input = infer_alphabet(m.alphabet.clone(), labels.iter().flat_map(|l| l.2.chars()))?;
    let output = infer_alphabet(m.output.clone(), labels.iter().flat_map(|l| l.3.chars()))?;
    let mut nft = Nft::with_names(input.clone(), output.clone(), m.states.names.clone());
    nft.set_initial(m.initial[0])?;
    for &q in &m.finals {
        nft.set_final(q, true)?;
    }
    for (no, from, a, b, to) in labels {
        nft.add_transition(from, letter(&input, no, a)?, letter(&output, no, b)?, to)?;
    }
    Ok(nft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use strlogic_core::automata::is_aperiodic_nfa;

    const PARITY: &str = "# even number of letters
states: even odd
initial: even
final: even
trans: even a odd
trans: odd a even
";

    #[test]
    fn parity_automaton() {
        let nfa = parse_nfa(PARITY).unwrap();
        assert_eq!(nfa.state_count(), 2);
        assert!(nfa.accepts(&[0, 0]));
        assert!(!nfa.accepts(&[0]));
        assert!(!is_aperiodic_nfa(&nfa).unwrap());
        assert_eq!(parse_nfa(&nfa.to_string()).unwrap(), nfa);
    }

    #[test]
    fn transducer_round_trip() {
        let text = "alphabet: (a,b)\noutput: (0,1)\ninitial: p\nfinal: p\ntrans: p a/1 p\ntrans: p b/0 p\n";
        let nft = parse_nft(text).unwrap();
        assert_eq!(nft.run_outputs_raw(&[0, 1]).into_iter().collect::<Vec<_>>(), [vec![1, 0]]);
        assert_eq!(parse_nft(&nft.to_string()).unwrap(), nft);
        assert!(matches!(parse_nft("initial: p\ntrans: p a p\n"), Err(Error::Malformed(_))));
    }

    #[test]
    fn groupoid_round_trip() {
        let text = "elements: a b\nb a\na b\naccepting: a\n";
        let wp = parse_groupoid(text).unwrap();
        assert!(wp.accepts(&[0, 1]));
        assert!(!wp.accepts(&[0, 0]));
        assert_eq!(parse_groupoid(&wp.to_string()).unwrap().to_string(), wp.to_string());
        assert!(matches!(parse_groupoid("elements: a b\na b\n"), Err(Error::Malformed(_))));
        assert_eq!(parse_groupoid("elements: a\na\naccepting: z").unwrap_err(), Error::UnknownSymbol('z'));
    }

    #[test]
    fn formula_file_header() {
        let f = FormulaFile::parse("# majority of a\nalphabet: (a,b)\nQ[Maj] x.\n  P_a(x)\n").unwrap();
        assert_eq!(f.alphabet, Some(Alphabet::parse("(a,b)").unwrap()));
        let phi = f.formula(None, &LanguageEnv::new()).unwrap();
        assert_eq!(phi.to_string(), "Q[Maj] x. P_a(x)");
        assert!(f.formula(Some(&Alphabet::parse("(c)").unwrap()), &LanguageEnv::new()).is_err());
    }
}
