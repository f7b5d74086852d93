//! The `strlogic` command line.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
//! usage errors, 3 for unreadable or malformed input. With `--json`, every
//! verb prints one JSON object carrying `"schema": "strlogic/1"`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use strlogic_core::automata::{definition_check_aperiodic, is_aperiodic_nfa, subset_construction};
use strlogic_core::groupoid::cfg_to_groupoid;
use strlogic_core::nivat::{check_decomposition, nivat_decompose};
use strlogic_core::transducer::{compile_transform, CompileOptions};
use strlogic_core::witnesses::{
    bits, check_lemma_lm, check_tphi_bounded, lm_bounded, render_bits, search_bounds, squares_witness_report,
    ww_witness, Profiler,
};
use strlogic_core::{corpus, Alphabet, Assignment, Formula, LanguageEnv, LanguageRef, TransformSpec, Word};

use crate::acceptance::{self, Config, DEFAULT_SEED};
use crate::formats::{load, parse_grammar, parse_groupoid, parse_nfa, parse_nft, FormatError, FormulaFile};

pub const SCHEMA: &str = "strlogic/1";

/// Overrides the type-monoid element cap used by `compile-fo`.
pub const TYPE_BUDGET_VAR: &str = "STRLOGIC_TYPE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "strlogic", version, about = "First-order logic with groupoidal quantifiers over finite strings")]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Register a language for `Q[NAME]`: a grammar file, or a groupoid
    /// file starting with `elements:`.
    #[arg(long = "lang", value_name = "NAME=FILE", global = true)]
    langs: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormulaArgs {
    /// Formula file.
    #[arg(short = 'f', long = "formula", value_name = "FILE", required_unless_present = "expr")]
    file: Option<PathBuf>,
    /// Formula text given inline.
    #[arg(short = 'e', long, conflicts_with = "file")]
    expr: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula on a word.
    Eval {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(short, long)]
        word: String,
        /// Input alphabet such as `(a,b)`; inferred when omitted.
        #[arg(long)]
        sigma: Option<String>,
        /// Positions of free variables, e.g. `x=2,y=3`.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Print the image of a word under a Lindström quantifier's transformation.
    Transform {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(short, long)]
        word: String,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        assign: Option<String>,
    },
    /// Context-free grammars.
    Cfl {
        #[command(subcommand)]
        op: CflOp,
    },
    /// Groupoid word problem.
    Wp {
        #[arg(short, long)]
        groupoid: PathBuf,
        #[arg(short, long)]
        word: String,
        /// Also print every element the word multiplies to.
        #[arg(long)]
        products: bool,
    },
    /// Decide whether an automaton's transition monoid is aperiodic.
    Aperiodic {
        #[arg(short, long)]
        automaton: PathBuf,
        /// Cross-check against the definition on words up to this length.
        #[arg(long)]
        check_len: Option<usize>,
    },
    /// Compile an FO-translation into a letter-to-letter transducer.
    CompileFo {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        gamma: String,
        /// Write the transducer here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a transducer on a word and print every output.
    Xduce {
        #[arg(short = 'm', long)]
        machine: PathBuf,
        #[arg(short, long)]
        word: String,
    },
    /// Nivat decomposition of a unary Lindström sentence.
    Nivat {
        #[command(flatten)]
        formula: FormulaArgs,
        /// Quantifier language; the formula then holds the bodies in `x`,
        /// separated by `;`.
        #[arg(short = 'B', long = "language")]
        language: Option<String>,
        #[arg(long, default_value = "(a,b)")]
        sigma: String,
        /// Compare with the sentence on all words up to this length.
        #[arg(long)]
        check: Option<usize>,
    },
    /// Witness computations for bounded strings, profiles and length sets.
    Witness {
        #[command(subcommand)]
        op: WitnessOp,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Cap every word-length bound at this value.
        #[arg(long)]
        max_len: Option<usize>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum CflOp {
    /// CYK membership.
    Member {
        #[arg(short, long)]
        grammar: PathBuf,
        #[arg(short, long)]
        word: String,
    },
    /// Print the grammar in Chomsky normal form.
    Cnf {
        #[arg(short, long)]
        grammar: PathBuf,
    },
    /// Print an equivalent groupoid word problem.
    Groupoid {
        #[arg(short, long)]
        grammar: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum WitnessOp {
    /// `(l, m)`-boundedness of a bit string, or the and/or bound for two.
    Lm {
        u: String,
        #[arg(short)]
        l: usize,
        #[arg(short)]
        m: usize,
        /// Second string, same length as the first.
        #[arg(long, requires_all = ["l2", "m2"])]
        w: Option<String>,
        #[arg(long)]
        l2: Option<usize>,
        #[arg(long)]
        m2: Option<usize>,
    },
    /// Uniform block bounds of a unary FO(+) formula's profiles.
    Tphi {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long, default_value = "x")]
        x: String,
        /// Parameter variables, comma separated.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long, default_value_t = 24)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        m_cap: usize,
        /// Largest block count accepted when reporting the minimal bound.
        #[arg(long, default_value_t = 12)]
        l_cap: usize,
        /// Check one bound instead of searching.
        #[arg(short, requires = "m")]
        l: Option<usize>,
        #[arg(short, requires = "l")]
        m: Option<usize>,
    },
    /// Semilinear fits of the squares and of unary grammar length sets.
    Squares {
        #[arg(short, long, default_value_t = 60)]
        n: usize,
        /// Unary grammars to use instead of the bundled corpus.
        #[arg(short, long)]
        grammar: Vec<PathBuf>,
    },
    /// Is the word of the form `ww`, and is it in the complement grammar.
    Ww {
        #[arg(short, long)]
        word: String,
        #[arg(long, default_value = "(a,b)")]
        sigma: String,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<strlogic_core::Error> for Failure {
    fn from(e: strlogic_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// What a verb produced: its verdict, text lines and JSON fields.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn verdict(ok: bool, json: Value) -> Self {
        Report { ok, text: ok.to_string(), json }
    }
}

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let json = cli.json;
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(report) => {
            let written = if json {
                let mut obj = report.json;
                if let Value::Object(map) = &mut obj {
                    map.insert("schema".into(), SCHEMA.into());
                    map.insert("ok".into(), report.ok.into());
                }
                writeln!(out, "{obj}")
            } else if report.text.is_empty() {
                Ok(())
            } else {
                writeln!(out, "{}", report.text.trim_end())
            };
            match written {
                Ok(()) if report.ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    let _ = writeln!(err, "strlogic: {e}");
                    3
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "strlogic: {msg}");
            2
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "strlogic: {msg}");
            3
        }
    }
}

fn language_env(specs: &[String]) -> Result<LanguageEnv, Failure> {
    let mut env = corpus::language_env();
    for spec in specs {
        let (name, file) =
            spec.split_once('=').ok_or_else(|| Failure::Usage(format!("--lang expects NAME=FILE, got `{spec}`")))?;
        let path = Path::new(file);
        let text = crate::formats::read_file(path)?;
        let parse_err = |source| FormatError::Parse { path: path.to_owned(), source };
        let lang = if text.lines().any(|l| l.trim_start().starts_with("elements:")) {
            LanguageRef::groupoid(name, parse_groupoid(&text).map_err(parse_err)?)
        } else {
            LanguageRef::grammar(name, parse_grammar(&text).map_err(parse_err)?, None)
        };
        env.insert(name, lang);
    }
    Ok(env)
}

fn alphabet(text: &str) -> Result<Alphabet, Failure> {
    Alphabet::parse(text).map_err(|e| Failure::Usage(format!("bad alphabet `{text}`: {e}")))
}

fn formula_file(args: &FormulaArgs) -> Result<FormulaFile, Failure> {
    match (&args.file, &args.expr) {
        (Some(path), _) => Ok(load(path, FormulaFile::parse)?),
        (None, Some(text)) => Ok(FormulaFile::parse(text)?),
        (None, None) => Err(Failure::Usage("give --formula FILE or --expr TEXT".into())),
    }
}

/// The alphabet for a formula and word: `--sigma`, else the file header,
/// else the sorted letters of both.
fn resolve_alphabet(sigma: &Option<String>, file: &FormulaFile, f: &Formula, word: &str) -> Result<Alphabet, Failure> {
    if let Some(s) = sigma {
        return alphabet(s);
    }
    if let Some(a) = &file.alphabet {
        return Ok(a.clone());
    }
    let mut letters: Vec<char> = f.letters().into_iter().chain(word.chars()).collect();
    letters.sort_unstable();
    letters.dedup();
    if letters.is_empty() {
        return Err(Failure::Usage("cannot infer an alphabet; pass --sigma".into()));
    }
    Ok(Alphabet::new(letters)?)
}

fn parse_assignment(text: Option<&str>) -> Result<Assignment, Failure> {
    let mut a = Assignment::new();
    for part in text.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let parsed = part.split_once('=').and_then(|(v, p)| Some((v.trim(), p.trim().parse::<usize>().ok()?)));
        let (var, pos) = parsed.ok_or_else(|| Failure::Usage(format!("bad assignment `{part}`, expected VAR=POS")))?;
        a.insert(var.to_string(), pos);
    }
    Ok(a)
}

/// Resolves `-B` case-insensitively against registered and built-in names.
fn language_name(name: &str, env: &LanguageEnv) -> Result<String, Failure> {
    if env.get(name).is_some() {
        return Ok(name.to_string());
    }
    let lower = name.to_lowercase();
    let builtin = ["Maj", "Majority", "Eq01", "Add", "Dyck1", "Dyck2", "Dyck3", "Dyck4"];
    env.names()
        .chain(builtin)
        .find(|n| n.to_lowercase() == lower && env.get(n).is_some())
        .map(str::to_string)
        .ok_or_else(|| Failure::Input(format!("unknown language `{name}`")))
}

fn dispatch(cli: Cli) -> Result<Report, Failure> {
    let env = language_env(&cli.langs)?;
    match cli.command {
        Command::Eval { formula, word, sigma, assign } => {
            let file = formula_file(&formula)?;
            let loose = file.formula(None, &env)?;
            let sigma = resolve_alphabet(&sigma, &file, &loose, &word)?;
            let f = file.formula(Some(&sigma), &env)?;
            let w = Word::parse(&word, &sigma)?;
            let value = strlogic_core::eval(&f, &w, &parse_assignment(assign.as_deref())?)?;
            Ok(Report::verdict(value, json!({"command": "eval", "formula": f.to_string(), "word": word, "value": value})))
        }
        Command::Transform { formula, word, sigma, assign } => {
            let file = formula_file(&formula)?;
            let loose = file.formula(None, &env)?;
            let sigma = resolve_alphabet(&sigma, &file, &loose, &word)?;
            let Formula::Lindstrom(q) = file.formula(Some(&sigma), &env)? else {
                return Err(Failure::Input("transform expects a Lindström quantifier `Q[L](x,...)[...]`".into()));
            };
            let spec = TransformSpec::of_lindstrom(&q)?;
            let w = Word::parse(&word, &sigma)?;
            let image = strlogic_core::transform(&spec, &w, &parse_assignment(assign.as_deref())?)?;
            let member = q.language.member(&image)?;
            Ok(Report {
                ok: true,
                text: image.to_text(),
                json: json!({"command": "transform", "word": word, "image": image.to_text(),
                             "language": q.language.name(), "member": member}),
            })
        }
        Command::Cfl { op } => cfl(op),
        Command::Wp { groupoid, word, products } => {
            let wp = load(&groupoid, parse_groupoid)?;
            let w = Word::parse(&word, wp.groupoid().elements())?;
            let member = wp.member(&w)?;
            let mut report = Report::verdict(member, json!({"command": "wp", "word": word, "member": member}));
            if products {
                let elems = wp.groupoid().elements();
                let set: Vec<String> = wp.groupoid().all_products(w.letters())?.into_iter().map(|e| elems.symbol(e).to_string()).collect();
                report.text = format!("{member}\nproducts: {}", set.join(" "));
                report.json["products"] = json!(set);
            }
            Ok(report)
        }
        Command::Aperiodic { automaton, check_len } => {
            let nfa = load(&automaton, parse_nfa)?;
            let aperiodic = is_aperiodic_nfa(&nfa)?;
            let mut report = Report::verdict(
                aperiodic,
                json!({"command": "aperiodic", "states": nfa.state_count(), "aperiodic": aperiodic}),
            );
            if let Some(len) = check_len {
                let by_definition = definition_check_aperiodic(&subset_construction(&nfa), len);
                if by_definition != aperiodic {
                    return Err(Failure::Input(format!(
                        "monoid test says {aperiodic}, definition up to length {len} says {by_definition}"
                    )));
                }
                report.json["definition_check"] = json!(by_definition);
            }
            Ok(report)
        }
        Command::CompileFo { formula, sigma, gamma, output } => {
            let sigma = alphabet(&sigma)?;
            let gamma = alphabet(&gamma)?;
            let phi = formula_file(&formula)?.formula(Some(&sigma), &env)?;
            let free = phi.free_vars();
            if free.len() > 1 {
                return Err(Failure::Input(format!("`{phi}` has more than one free variable")));
            }
            let var = free.into_iter().next().unwrap_or_else(|| "x".to_string());
            let spec = TransformSpec::new(vec![phi], &[var.as_str()], gamma)?;
            let mut opts = CompileOptions::default();
            if let Ok(v) = std::env::var(TYPE_BUDGET_VAR) {
                opts.budget = v.parse().map_err(|_| Failure::Usage(format!("{TYPE_BUDGET_VAR}=`{v}` is not a number")))?;
            }
            let c = compile_transform(&spec, &sigma, &opts)?;
            let summary = json!({"command": "compile-fo", "states": c.nft.state_count(),
                                 "transitions": c.nft.transition_count(), "rank": c.rank, "types": c.type_count});
            let text = match &output {
                Some(path) => {
                    std::fs::write(path, c.nft.to_string()).map_err(|source| FormatError::Io { path: path.clone(), source })?;
                    format!("{} states, {} transitions, rank {}", c.nft.state_count(), c.nft.transition_count(), c.rank)
                }
                None => c.nft.to_string(),
            };
            let mut json = summary;
            if output.is_none() {
                json["machine"] = json!(c.nft.to_string());
            }
            Ok(Report { ok: true, text, json })
        }
        Command::Xduce { machine, word } => {
            let nft = load(&machine, parse_nft)?;
            let w = Word::parse(&word, nft.input())?;
            let outputs: Vec<String> = nft.run_outputs(&w)?.iter().map(Word::to_text).collect();
            Ok(Report {
                ok: !outputs.is_empty(),
                text: outputs.join("\n"),
                json: json!({"command": "xduce", "word": word, "outputs": outputs}),
            })
        }
        Command::Nivat { formula, language, sigma, check } => {
            let sigma = alphabet(&sigma)?;
            let file = formula_file(&formula)?;
            let sentence = match language {
                Some(name) => {
                    let name = language_name(&name, &env)?;
                    strlogic_core::parse_formula_with(&format!("Q[{name}](x)[{}]", file.text), Some(&sigma), &env)?
                }
                None => file.formula(Some(&sigma), &env)?,
            };
            let d = nivat_decompose(&sentence, &sigma)?;
            let star_free = d.is_star_free()?;
            let mut text = format!(
                "sentence: {sentence}\nB: {} over {}\nD: {} states, {} transitions over {} pairs\nstar-free: {star_free}",
                d.language.name(),
                d.target,
                d.d.state_count(),
                d.d.transition_count(),
                d.pairs.len()
            );
            let mut json = json!({"command": "nivat", "sentence": sentence.to_string(), "language": d.language.name(),
                                  "states": d.d.state_count(), "transitions": d.d.transition_count(),
                                  "star_free": star_free});
            let mut ok = true;
            if let Some(n) = check {
                ok = check_decomposition(&d, &sentence, n)?;
                text.push_str(&format!("\ncheck up to length {n}: {}", if ok { "agrees" } else { "DISAGREES" }));
                json["check"] = json!({"max_len": n, "agrees": ok});
            }
            Ok(Report { ok, text, json })
        }
        Command::Witness { op } => witness(op, &env),
        Command::Selftest { max_len, only } => {
            let cfg = Config { max_len, seed: cli.seed };
            let ids: Vec<usize> = if only.is_empty() { acceptance::CRITERIA.iter().map(|c| c.0).collect() } else { only };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=acceptance::CRITERIA.len()).contains(&i)) {
                return Err(Failure::Usage(format!("no criterion {bad}")));
            }
            let outcomes: Vec<_> = ids.iter().map(|&i| acceptance::run(i, &cfg)).collect();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let mut lines: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
            lines.push(format!("{passed}/{} criteria passed", outcomes.len()));
            Ok(Report {
                ok: passed == outcomes.len(),
                text: lines.join("\n"),
                json: json!({"command": "selftest", "seed": cli.seed, "max_len": max_len, "criteria": outcomes}),
            })
        }
    }
}

fn cfl(op: CflOp) -> Result<Report, Failure> {
    match op {
        CflOp::Member { grammar, word } => {
            let g = load(&grammar, parse_grammar)?;
            let member = g.member(&Word::parse(&word, g.terminals())?)?;
            Ok(Report::verdict(member, json!({"command": "cfl member", "word": word, "member": member})))
        }
        CflOp::Cnf { grammar } => {
            let g = load(&grammar, parse_grammar)?;
            Ok(Report {
                ok: true,
                text: g.to_string(),
                json: json!({"command": "cfl cnf", "nonterminals": g.nonterminals().len(),
                             "rules": g.rule_count(), "grammar": g.to_string()}),
            })
        }
        CflOp::Groupoid { grammar } => {
            let g = load(&grammar, parse_grammar)?;
            let emb = cfg_to_groupoid(&g)?;
            let letters: Vec<String> = g
                .terminals()
                .symbols()
                .iter()
                .zip(&emb.letters)
                .map(|(c, &e)| format!("{c}={}", emb.problem.groupoid().elements().symbol(e)))
                .collect();
            let text = format!("# letters: {}\n{}", letters.join(" "), emb.problem);
            Ok(Report {
                ok: true,
                text,
                json: json!({"command": "cfl groupoid", "elements": emb.problem.groupoid().len(),
                             "letters": letters, "groupoid": emb.problem.to_string()}),
            })
        }
    }
}

fn bit_string(text: &str) -> Result<Vec<bool>, Failure> {
    bits(text).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn witness(op: WitnessOp, env: &LanguageEnv) -> Result<Report, Failure> {
    match op {
        WitnessOp::Lm { u, l, m, w: None, .. } => {
            let u = bit_string(&u)?;
            let f = lm_bounded(&u, l, m);
            let text = f.as_ref().map_or_else(|| format!("not ({l},{m})-bounded"), ToString::to_string);
            Ok(Report {
                ok: f.is_some(),
                text,
                json: json!({"command": "witness lm", "u": render_bits(&u), "l": l, "m": m, "factorization": f}),
            })
        }
        WitnessOp::Lm { u, l, m, w: Some(w), l2, m2 } => {
            let (u, w) = (bit_string(&u)?, bit_string(&w)?);
            let (l2, m2) = (l2.unwrap_or(1), m2.unwrap_or(1));
            let holds = check_lemma_lm(&u, l, m, &w, l2, m2)?;
            let (bl, bm) = (5 * (l + l2), m * m2);
            Ok(Report {
                ok: holds,
                text: format!("and/or are ({bl},{bm})-bounded: {holds}"),
                json: json!({"command": "witness lm", "u": render_bits(&u), "w": render_bits(&w),
                             "bound": [bl, bm], "holds": holds}),
            })
        }
        WitnessOp::Tphi { formula, x, params, n_max, m_cap, l_cap, l, m } => {
            let sigma = strlogic_core::witnesses::tphi::unary_alphabet();
            let phi = formula_file(&formula)?.formula(Some(&sigma), env)?;
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            if let (Some(l), Some(m)) = (l, m) {
                let holds = check_tphi_bounded(&phi, &x, &params, n_max, l, m)?;
                return Ok(Report {
                    ok: holds,
                    text: format!("({l},{m})-bounded for n <= {n_max}: {holds}"),
                    json: json!({"command": "witness tphi", "formula": phi.to_string(), "l": l, "m": m,
                                 "n_max": n_max, "holds": holds}),
                });
            }
            let search = search_bounds(&Profiler::new(&phi, &x, &params)?, n_max, m_cap);
            let minimal = search.minimal(l_cap);
            let mut lines: Vec<String> =
                search.blocks.iter().enumerate().map(|(i, b)| format!("m={}: l={b}", i + 1)).collect();
            lines.push(match minimal {
                Some((l, m)) => format!("minimal: ({l},{m})"),
                None => format!("no bound with l <= {l_cap}"),
            });
            Ok(Report {
                ok: minimal.is_some(),
                text: lines.join("\n"),
                json: json!({"command": "witness tphi", "formula": phi.to_string(), "n_max": n_max,
                             "blocks": search.blocks, "minimal": minimal}),
            })
        }
        WitnessOp::Squares { n, grammar } => {
            let corpus = if grammar.is_empty() {
                corpus::unary_grammars()
            } else {
                grammar
                    .iter()
                    .map(|p| Ok((p.display().to_string(), load(p, parse_grammar)?)))
                    .collect::<Result<Vec<_>, Failure>>()?
            };
            let report = squares_witness_report(n, &corpus)?;
            let fit = |f: &Option<strlogic_core::grammar::LinearSetUnion>| {
                f.as_ref().map_or_else(|| "no fit".to_string(), ToString::to_string)
            };
            let mut lines = vec![format!("squares up to {n}: {}", fit(&report.squares_fit))];
            lines.extend(report.grammars.iter().map(|g| format!("{}: {}", g.name, fit(&g.fit))));
            lines.push(format!("separates: {}", report.separates()));
            Ok(Report {
                ok: report.separates(),
                text: lines.join("\n"),
                json: json!({"command": "witness squares", "report": report, "separates": report.separates()}),
            })
        }
        WitnessOp::Ww { word, sigma } => {
            let w = Word::parse(&word, &alphabet(&sigma)?)?;
            let (square, in_complement) = ww_witness(&w)?;
            Ok(Report {
                ok: square,
                text: format!("ww: {square}\ncomplement grammar: {in_complement}"),
                json: json!({"command": "witness ww", "word": word, "ww": square, "complement": in_complement}),
            })
        }
    }
}
