//! Command dispatch. Every command returns a [`Report`]: human text, a JSON
//! value with the same content, and an exit code.

use std::cell::OnceCell;
use std::fmt::Write as _;

use clap::{Subcommand, ValueEnum};
use garside::garside::{is_garside_family, smallest_garside_family, Decision, FamilyCheck};
use garside::normal::{self, NormalForm};
use garside::reversing::{
    check_complete, left_reverse, left_reverse_short, left_reverse_traced, right_reverse, right_reverse_short,
    right_reverse_traced, termination_closure, Completeness, GridFormat, ReversingOutcome, ReversingResult,
};
use garside::signed::{self, DeltaNormal, SymmetricNormal};
use garside::{
    Alphabet, Complement, Error, GarsideStructure, GermVerdict, NoetherianEvidence, Path, Presentation, SignedPath,
};
use serde_json::{json, Value};

use crate::input::{ParseError, Source};

/// Exit codes.
pub const OK: i32 = 0;
pub const NO: i32 = 1;
pub const INCONCLUSIVE: i32 = 2;
pub const USAGE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Lib(Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => USAGE,
            CliError::Lib(e) => match e {
                Error::OutOfFuel(_) | Error::Diverged(_) | Error::CapExceeded(_) => INCONCLUSIVE,
                Error::NoCommonMultiple(..) | Error::NoRightFraction | Error::NotComplemented(..) => NO,
                _ => USAGE,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(code: i32, text: String, json: Value) -> Self {
        Report { code, text, json }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Ascii,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Every applicable route; they must agree.
    All,
    /// Through normal forms.
    Nf,
    /// Reversing with the lcm selector (double reversing on signed words).
    Rev,
    /// Signed words only: left-reversing twice.
    Left,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Read right- and left-complements off the relations.
    CheckComplemented { input: String },
    /// Report why the presentation is (or may not be) right-Noetherian.
    CheckNoetherian { input: String },
    /// Check the cube condition on all triples of generators.
    CheckComplete { input: String },
    /// Reverse a signed word.
    Reverse {
        input: String,
        word: String,
        #[arg(long, value_enum, default_value = "right")]
        side: Side,
        /// Also print the reversing grid.
        #[arg(long, value_enum)]
        grid: Option<GridArg>,
        /// Use the general engine even when the complement is short.
        #[arg(long)]
        general: bool,
        /// Reverse over the Garside family with its lcm selectors.
        #[arg(long)]
        selector: bool,
    },
    /// Close the generators under the complement.
    Closure { input: String },
    /// Smallest Garside family containing the seeds.
    GarsideClosure {
        input: String,
        /// Comma-separated seed words (default: all generators).
        #[arg(long)]
        seed: Option<String>,
        /// Skip pairs without a common right-multiple instead of failing.
        #[arg(long)]
        permissive: bool,
    },
    /// Check whether comma-separated words form a Garside family.
    IsGarsideFamily { input: String, family: String },
    /// Check whether a germ is a Garside germ.
    CheckGerm { input: String },
    /// Print the Square-witness on all composable pairs of the family.
    WitnessTable { input: String },
    /// Normal decomposition of a positive word.
    Normalize { input: String, word: String },
    /// Decide whether two words (or one signed word and ε) are equal.
    WordProblem {
        input: String,
        #[arg(num_args = 1..=2, required = true)]
        words: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        route: Route,
    },
    /// Left-divisibility, in the monoid or (for signed words) the groupoid.
    LeftDivides { input: String, u: String, v: String },
    /// Right-lcm of two positive words (left-lcm with --left).
    Lcm {
        input: String,
        u: String,
        v: String,
        #[arg(long)]
        left: bool,
    },
    /// Symmetric normal form of a signed word.
    SymNormalize { input: String, word: String },
    /// Δ-normal form of a signed word.
    DeltaNormalize { input: String, word: String },
    /// Normal form of the inverse of a signed word.
    Invert {
        input: String,
        word: String,
        /// Use the Δ-normal form instead of the symmetric one.
        #[arg(long)]
        delta: bool,
    },
    /// Least upper bound of two signed words for left-divisibility.
    Lub { input: String, u: String, v: String },
    /// Greatest lower bound of two signed words for left-divisibility.
    Glb { input: String, u: String, v: String },
    /// Left-gcd of two positive words.
    Gcd { input: String, u: String, v: String },
    /// Family, lcm, strong and bounded report.
    Info { input: String },
}

impl Command {
    pub fn input(&self) -> &str {
        use Command::*;
        match self {
            CheckComplemented { input }
            | CheckNoetherian { input }
            | CheckComplete { input }
            | Reverse { input, .. }
            | Closure { input }
            | GarsideClosure { input, .. }
            | IsGarsideFamily { input, .. }
            | CheckGerm { input }
            | WitnessTable { input }
            | Normalize { input, .. }
            | WordProblem { input, .. }
            | LeftDivides { input, .. }
            | Lcm { input, .. }
            | SymNormalize { input, .. }
            | DeltaNormalize { input, .. }
            | Invert { input, .. }
            | Lub { input, .. }
            | Glb { input, .. }
            | Gcd { input, .. }
            | Info { input } => input,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub fuel: u64,
    pub cap: usize,
    /// Comma-separated family words for presentation inputs.
    pub family: Option<String>,
}

/// Parsed input plus the Garside structure, built on first use.
pub struct Workspace {
    pub source: Source,
    pub options: Options,
    structure: OnceCell<GarsideStructure>,
}

fn word_list(al: &Alphabet, text: &str) -> Res<Vec<Path>> {
    text.split(',').map(|w| al.parse_path(w.trim()).map_err(CliError::from)).collect()
}

impl Workspace {
    pub fn new(source: Source, options: Options) -> Self {
        Workspace { source, options, structure: OnceCell::new() }
    }

    /// The presentation of the input (a germ's own presentation for germs).
    fn presentation(&self) -> Res<Presentation> {
        match &self.source {
            Source::Presentation(p) => Ok(p.clone()),
            Source::Germ(g) => Ok(g.to_presentation()?),
        }
    }

    fn complement(&self) -> Res<(Presentation, Complement)> {
        let p = self.presentation()?;
        let theta = p.derive_complement()?;
        Ok((p, theta))
    }

    pub fn structure(&self) -> Res<&GarsideStructure> {
        if let Some(s) = self.structure.get() {
            return Ok(s);
        }
        let s = match &self.source {
            Source::Germ(g) => GarsideStructure::from_germ(g)?,
            Source::Presentation(p) => {
                let theta = p.derive_complement()?;
                let family = match &self.options.family {
                    Some(text) => word_list(p.alphabet(), text)?,
                    None => {
                        let seeds: Vec<Path> = p
                            .alphabet()
                            .letters()
                            .map(|l| p.alphabet().path(p.alphabet().src(l), vec![l]))
                            .collect::<garside::Result<_>>()?;
                        smallest_garside_family(&theta, &seeds, self.options.fuel, self.options.cap, false)?
                    }
                };
                GarsideStructure::from_presentation(p, &family, self.options.fuel)?
            }
        };
        Ok(self.structure.get_or_init(|| s))
    }

    fn signed(&self, text: &str) -> Res<SignedPath> {
        Ok(self.structure()?.alphabet().parse_signed(text)?)
    }

    fn positive(&self, text: &str) -> Res<Path> {
        Ok(self.structure()?.alphabet().parse_path(text)?)
    }
}

fn names(s: &GarsideStructure, nf: &NormalForm) -> Vec<String> {
    nf.entries.iter().map(|&e| s.name(e).to_string()).collect()
}

fn nf_json(s: &GarsideStructure, nf: &NormalForm) -> Value {
    json!({ "entries": names(s, nf), "text": nf.show(s) })
}

fn sym_json(s: &GarsideStructure, sn: &SymmetricNormal) -> Value {
    json!({
        "denominator": names(s, &sn.denominator),
        "numerator": names(s, &sn.numerator),
        "text": sn.show(s),
    })
}

fn sym_text(s: &GarsideStructure, sn: &SymmetricNormal) -> String {
    format!("{}\ndenominator: {}\nnumerator: {}\n", sn.show(s), sn.denominator.show(s), sn.numerator.show(s))
}

fn delta_json(s: &GarsideStructure, dn: &DeltaNormal) -> Value {
    json!({ "exponent": dn.exponent, "tail": names(s, &dn.tail), "text": dn.show(s) })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn code_of(b: bool) -> i32 {
    if b {
        OK
    } else {
        NO
    }
}

pub fn dispatch(cmd: &Command, ws: &Workspace) -> Res<Report> {
    use Command::*;
    let fuel = ws.options.fuel;
    match cmd {
        CheckComplemented { .. } => check_complemented(ws),
        CheckNoetherian { .. } => check_noetherian(ws),
        CheckComplete { .. } => {
            let (p, theta) = ws.complement()?;
            let al = p.alphabet();
            let verdict = match check_complete(&theta, p.noetherian_evidence(), fuel) {
                Ok(v) => v,
                Err(Error::PreconditionUnmet(m)) => {
                    return Ok(Report::new(
                        INCONCLUSIVE,
                        format!("inconclusive: {m}\n"),
                        json!({ "status": "inconclusive", "reason": m }),
                    ))
                }
                Err(e) => return Err(e.into()),
            };
            let triple = |a, b, c| vec![al.name(a).to_string(), al.name(b).to_string(), al.name(c).to_string()];
            Ok(match verdict {
                Completeness::Complete => Report::new(
                    OK,
                    "complete; left-cancellative\n".into(),
                    json!({ "status": "complete", "left_cancellative": true }),
                ),
                Completeness::Incomplete(a, b, c) => Report::new(
                    NO,
                    format!("incomplete: cube condition fails on ({})\n", triple(a, b, c).join(", ")),
                    json!({ "status": "incomplete", "triple": triple(a, b, c) }),
                ),
                Completeness::Inconclusive(a, b, c) => Report::new(
                    INCONCLUSIVE,
                    format!("inconclusive: cube condition undecided on ({})\n", triple(a, b, c).join(", ")),
                    json!({ "status": "inconclusive", "triple": triple(a, b, c) }),
                ),
            })
        }
        Reverse { word, side, grid, general, selector, .. } => reverse(ws, word, *side, *grid, *general, *selector),
        Closure { .. } => {
            let (p, theta) = ws.complement()?;
            let fam = termination_closure(&theta, fuel, ws.options.cap)?;
            Ok(word_list_report(p.alphabet(), &fam))
        }
        GarsideClosure { seed, permissive, .. } => {
            let (p, theta) = ws.complement()?;
            let al = p.alphabet();
            let seeds = match seed {
                Some(text) => word_list(al, text)?,
                None => al.letters().map(|l| al.path(al.src(l), vec![l])).collect::<garside::Result<_>>()?,
            };
            let fam = smallest_garside_family(&theta, &seeds, fuel, ws.options.cap, *permissive)?;
            Ok(word_list_report(al, &fam))
        }
        IsGarsideFamily { family, .. } => {
            let (p, theta) = ws.complement()?;
            let al = p.alphabet();
            let fam = word_list(al, family)?;
            Ok(match is_garside_family(&theta, &fam, fuel)? {
                FamilyCheck::Garside => Report::new(OK, "Garside family\n".into(), json!({ "garside": true })),
                FamilyCheck::NotGenerating(l) => Report::new(
                    NO,
                    format!("not a Garside family: no member is equivalent to {}\n", al.name(l)),
                    json!({ "garside": false, "missing_letter": al.name(l) }),
                ),
                FamilyCheck::NotClosed(i, j) => {
                    let (u, v) = (al.show_path(&fam[i]), al.show_path(&fam[j]));
                    Report::new(
                        NO,
                        format!("not a Garside family: not closed on ({u}, {v})\n"),
                        json!({ "garside": false, "pair": [u, v] }),
                    )
                }
            })
        }
        CheckGerm { .. } => check_germ(ws),
        WitnessTable { .. } => witness_table(ws),
        Normalize { word, .. } => {
            let s = ws.structure()?;
            let nf = normal::normalize_path(s, &ws.positive(word)?)?;
            Ok(Report::new(OK, format!("{}\n", nf.show(s)), nf_json(s, &nf)))
        }
        WordProblem { words, route, .. } => word_problem(ws, words, *route),
        LeftDivides { u, v, .. } => {
            let s = ws.structure()?;
            let (fu, fv) = (ws.signed(u)?, ws.signed(v)?);
            let answer = match (fu.to_positive(), fv.to_positive()) {
                (Some(pu), Some(pv)) if s.has_right_lcms() => normal::left_divides(s, &pu, &pv)?,
                _ => signed::fraction_divides(s, &fu, &fv, fuel)?,
            };
            Ok(Report::new(code_of(answer), format!("{}\n", yes_no(answer)), json!({ "divides": answer })))
        }
        Lcm { u, v, left, .. } => lcm(ws, u, v, *left),
        SymNormalize { word, .. } => {
            let s = ws.structure()?;
            let sn = signed::sym_normalize(s, &ws.signed(word)?, fuel)?;
            Ok(Report::new(OK, sym_text(s, &sn), sym_json(s, &sn)))
        }
        DeltaNormalize { word, .. } => {
            let s = ws.structure()?;
            let dn = signed::delta_normalize(s, &ws.signed(word)?)?;
            Ok(Report::new(OK, format!("{}\n", dn.show(s)), delta_json(s, &dn)))
        }
        Invert { word, delta, .. } => {
            let s = ws.structure()?;
            let w = ws.signed(word)?;
            if *delta {
                let dn = signed::invert_delta(s, &signed::delta_normalize(s, &w)?)?;
                Ok(Report::new(OK, format!("{}\n", dn.show(s)), delta_json(s, &dn)))
            } else {
                let sn = signed::sym_normalize(s, &w, fuel)?.inverse();
                Ok(Report::new(OK, sym_text(s, &sn), sym_json(s, &sn)))
            }
        }
        Lub { u, v, .. } | Glb { u, v, .. } => {
            let s = ws.structure()?;
            let (w1, w2) = (ws.signed(u)?, ws.signed(v)?);
            let out = if matches!(cmd, Lub { .. }) {
                signed::least_upper_bound(s, &w1, &w2, fuel)?
            } else {
                signed::greatest_lower_bound(s, &w1, &w2, fuel)?
            };
            let sn = signed::sym_normalize(s, &out, fuel)?;
            let word = s.alphabet().show_signed(&out);
            Ok(Report::new(
                OK,
                format!("{word}\nnormal form: {}\n", sn.show(s)),
                json!({ "word": word, "normal_form": sym_json(s, &sn) }),
            ))
        }
        Gcd { u, v, .. } => {
            let s = ws.structure()?;
            let g = signed::left_gcd(s, &ws.positive(u)?, &ws.positive(v)?)?;
            let nf = normal::normalize_path(s, &g)?;
            let word = s.alphabet().show_path(&g);
            Ok(Report::new(
                OK,
                format!("{word}\nnormal form: {}\n", nf.show(s)),
                json!({ "word": word, "normal_form": nf_json(s, &nf) }),
            ))
        }
        Info { .. } => info(ws),
    }
}

fn word_list_report(al: &Alphabet, fam: &[Path]) -> Report {
    let words: Vec<String> = fam.iter().map(|w| al.show_path(w)).collect();
    let mut text = String::new();
    for w in &words {
        let _ = writeln!(text, "{w}");
    }
    Report::new(OK, text, json!({ "family": words }))
}

fn complement_lines(theta: &Complement) -> Vec<String> {
    let al = theta.alphabet();
    theta.entries().map(|(&(a, b), v)| format!("({}, {}) -> {}", al.name(a), al.name(b), al.show(v))).collect()
}

fn check_complemented(ws: &Workspace) -> Res<Report> {
    let p = ws.presentation()?;
    let mut text = String::new();
    let mut j = serde_json::Map::new();
    let mut code = OK;
    for (side, res) in [("right", p.derive_complement()), ("left", p.derive_left_complement())] {
        match res {
            Ok(theta) => {
                let lines = complement_lines(&theta);
                let _ = writeln!(text, "{side}-complemented: yes");
                for l in &lines {
                    let _ = writeln!(text, "  {l}");
                }
                j.insert(side.into(), json!({ "complemented": true, "complement": lines }));
            }
            Err(Error::NotComplemented(a, b)) => {
                let _ = writeln!(text, "{side}-complemented: no (two relations for {a}, {b})");
                j.insert(side.into(), json!({ "complemented": false, "pair": [a, b] }));
                if side == "right" {
                    code = NO;
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::new(code, text, Value::Object(j)))
}

fn check_noetherian(ws: &Workspace) -> Res<Report> {
    let p = ws.presentation()?;
    let (code, what) = match p.noetherian_evidence() {
        Some(NoetherianEvidence::Homogeneous) => (OK, "homogeneous"),
        Some(NoetherianEvidence::UserAsserted) => (OK, "asserted"),
        Some(NoetherianEvidence::WeightMap) => (OK, "weight map (asserted)"),
        None => (INCONCLUSIVE, "no evidence"),
    };
    Ok(Report::new(code, format!("{what}\n"), json!({ "evidence": what })))
}

fn outcome_report(al: &Alphabet, out: &ReversingOutcome, grid: Option<GridArg>) -> Report {
    let (code, status, result) = match &out.result {
        ReversingResult::Reversed(w) => (OK, "reversed", al.show_signed(w)),
        ReversingResult::Fail { a, b } => {
            (NO, "fail", format!("fail: complement undefined on ({}, {})", al.name(*a), al.name(*b)))
        }
        ReversingResult::OutOfFuel => (INCONCLUSIVE, "out-of-fuel", format!("out of fuel after {} steps", out.steps)),
    };
    let mut text = format!("{result}\nsteps: {}\n", out.steps);
    let mut j = json!({ "status": status, "result": result, "steps": out.steps });
    if let (Some(g), Some(fmt)) = (&out.grid, grid) {
        let rendered = g.render(match fmt {
            GridArg::Ascii => GridFormat::Ascii,
            GridArg::Dot => GridFormat::Dot,
        });
        text.push_str(&rendered);
        j["grid"] = Value::String(rendered);
    }
    Report::new(code, text, j)
}

fn reverse(
    ws: &Workspace,
    word: &str,
    side: Side,
    grid: Option<GridArg>,
    general: bool,
    selector: bool,
) -> Res<Report> {
    let use_family = selector || matches!(ws.source, Source::Germ(_));
    let theta = if use_family {
        let s = ws.structure()?;
        match side {
            Side::Right => s.right_selector().clone(),
            Side::Left => s
                .left_selector()
                .cloned()
                .ok_or_else(|| CliError::Lib(Error::PreconditionUnmet("the family has no left-lcm selector".into())))?,
        }
    } else {
        let p = ws.presentation()?;
        match side {
            Side::Right => p.derive_complement()?,
            Side::Left => p.derive_left_complement()?,
        }
    };
    let al = theta.alphabet().clone();
    let w = al.parse_signed(word)?;
    let fuel = ws.options.fuel;
    let out = match (side, theta.is_short() && !general, grid.is_some()) {
        (Side::Right, true, _) => right_reverse_short(&theta, &w)?,
        (Side::Left, true, _) => left_reverse_short(&theta, &w)?,
        (Side::Right, false, true) => right_reverse_traced(&theta, &w, fuel)?,
        (Side::Left, false, true) => left_reverse_traced(&theta, &w, fuel)?,
        (Side::Right, false, false) => right_reverse(&theta, &w, fuel)?,
        (Side::Left, false, false) => left_reverse(&theta, &w, fuel)?,
    };
    Ok(outcome_report(&al, &out, grid))
}

fn check_germ(ws: &Workspace) -> Res<Report> {
    let Source::Germ(g) = &ws.source else {
        return Err(CliError::Usage("check-germ needs a germ input".into()));
    };
    let (verdict, reason) = match g.recognize() {
        GermVerdict::Garside => (true, String::new()),
        GermVerdict::NotLeftCancellative => (false, "not left-cancellative".into()),
        GermVerdict::NotLeftAssociative => (false, "not left-associative".into()),
        GermVerdict::NoGreatest(a, b) => (false, format!("J({}, {}) has no greatest element", g.name(a), g.name(b))),
    };
    let text = if verdict { "Garside germ\n".to_string() } else { format!("not a Garside germ: {reason}\n") };
    Ok(Report::new(code_of(verdict), text, json!({ "garside": verdict, "reason": reason })))
}

fn witness_table(ws: &Workspace) -> Res<Report> {
    let s = ws.structure()?;
    let g = s.germ();
    let n = s.len();
    let mut cells = vec![vec![String::new(); n]; n];
    let mut rows = Vec::new();
    for (a, row) in cells.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            if g.tgt(a) != g.src(b) {
                continue;
            }
            if let Some((c, d)) = s.witness(a, b) {
                *cell = format!("{}|{}", s.name(c), s.name(d));
                rows.push(json!({ "pair": [s.name(a), s.name(b)], "witness": [s.name(c), s.name(d)] }));
            }
        }
    }
    let width = cells
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .chain((0..n).map(|e| s.name(e).chars().count()))
        .max()
        .unwrap_or(1);
    let pad = |t: &str| format!("{t}{}", " ".repeat(width - t.chars().count()));
    let mut text = pad("");
    for b in 0..n {
        let _ = write!(text, " | {}", pad(s.name(b)));
    }
    text = text.trim_end().to_string();
    text.push('\n');
    for (a, row) in cells.iter().enumerate() {
        let mut line = pad(s.name(a));
        for c in row {
            let _ = write!(line, " | {}", pad(if c.is_empty() { "-" } else { c }));
        }
        text.push_str(line.trim_end());
        text.push('\n');
    }
    Ok(Report::new(OK, text, json!({ "witness": rows })))
}

fn word_problem(ws: &Workspace, words: &[String], route: Route) -> Res<Report> {
    let s = ws.structure()?;
    let fuel = ws.options.fuel;
    let w1 = ws.signed(&words[0])?;
    let w2 = match words.get(1) {
        Some(t) => Some(ws.signed(t)?),
        None => None,
    };
    let positive = match &w2 {
        Some(w2) => w1.to_positive().zip(w2.to_positive()),
        None => None,
    };
    let mut answers: Vec<(&str, bool)> = Vec::new();
    match positive {
        Some((u, v)) => {
            if matches!(route, Route::All | Route::Nf) {
                answers.push(("nf", normal::word_problem_nf(s, &u, &v)?));
            }
            if matches!(route, Route::All | Route::Rev) && (route == Route::Rev || s.has_right_lcms()) {
                answers.push(("rev", normal::word_problem_rev(s, &u, &v)?));
            }
            if route == Route::Left {
                return Err(CliError::Usage("route `left` is for signed words".into()));
            }
        }
        None => {
            let w = match &w2 {
                Some(w2) => w1.compose(&w2.bar())?,
                None => w1.clone(),
            };
            let strong = s.left_selector().is_some();
            if matches!(route, Route::All | Route::Nf) {
                answers.push(("nf", signed::word_problem_nf(s, &w, fuel)?));
            }
            if route == Route::Rev || (route == Route::All && strong && s.has_right_lcms()) {
                answers.push(("double", signed::word_problem_double_rev(s, &w, fuel)?));
            }
            if route == Route::Left || (route == Route::All && strong) {
                answers.push(("left", signed::word_problem_left_only(s, &w, fuel)?));
            }
        }
    }
    let first = answers[0].1;
    if answers.iter().any(|&(_, a)| a != first) {
        let detail: Vec<String> = answers.iter().map(|(r, a)| format!("{r}={a}")).collect();
        return Err(CliError::Lib(Error::PreconditionUnmet(format!("routes disagree: {}", detail.join(", ")))));
    }
    let mut text = format!("{}\n", if first { "equal" } else { "not equal" });
    for (r, a) in &answers {
        let _ = writeln!(text, "  {r}: {a}");
    }
    let routes: serde_json::Map<String, Value> =
        answers.iter().map(|(r, a)| (r.to_string(), Value::Bool(*a))).collect();
    Ok(Report::new(code_of(first), text, json!({ "equal": first, "routes": routes })))
}

fn lcm(ws: &Workspace, u: &str, v: &str, left: bool) -> Res<Report> {
    let s = ws.structure()?;
    let (pu, pv) = (ws.positive(u)?, ws.positive(v)?);
    let al = s.alphabet();
    let (l, x, y) = if left {
        let theta = s
            .left_selector()
            .ok_or_else(|| CliError::Lib(Error::PreconditionUnmet("the family has no left-lcm selector".into())))?;
        normal::left_lcm(theta, &pu, &pv, ws.options.fuel)?
    } else {
        if !s.has_right_lcms() {
            return Err(CliError::Lib(Error::PreconditionUnmet("the family does not have right-lcms".into())));
        }
        normal::right_lcm(s.right_selector(), &pu, &pv, ws.options.fuel)?
    };
    let nf = normal::normalize_path(s, &l)?;
    let (lw, xw, yw) = (al.show_path(&l), al.show_path(&x), al.show_path(&y));
    let shape = if left { "x·v = y·u" } else { "u·x = v·y" };
    Ok(Report::new(
        OK,
        format!("{lw}\nnormal form: {}\n{shape} with x = {xw}, y = {yw}\n", nf.show(s)),
        json!({ "lcm": lw, "normal_form": nf_json(s, &nf), "x": xw, "y": yw, "side": if left { "left" } else { "right" } }),
    ))
}

/// Cycles of a permutation of the non-identity elements, fixed points left out.
fn cycles(s: &GarsideStructure, perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || s.is_identity(start) || perm[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            cyc.push(s.name(e));
            e = perm[e];
        }
        let _ = write!(out, "({})", cyc.join(" "));
    }
    if out.is_empty() {
        out.push_str("id");
    }
    out
}

fn info(ws: &Workspace) -> Res<Report> {
    let s = ws.structure()?;
    let g = s.germ();
    let family: Vec<&str> = (0..s.len()).map(|e| s.name(e)).collect();
    let strong = s.is_strong();
    let bounded = s.is_bounded();
    let domino = s.second_domino_counterexample();
    let mut text = String::new();
    let _ = writeln!(text, "objects: {}", g.objects().len());
    let _ = writeln!(text, "family: {}", family.join(" "));
    let _ = writeln!(text, "right-lcms: {}", yes_no(s.has_right_lcms()));
    let left_mult = match s.common_left_multiples_exist() {
        Decision::Yes => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    };
    let _ = writeln!(text, "common left-multiples: {left_mult}");
    let _ = writeln!(text, "strong: {strong}");
    let _ = writeln!(text, "bounded: {bounded}");
    let mut j = json!({
        "objects": g.objects().len(),
        "family": family,
        "right_lcms": s.has_right_lcms(),
        "common_left_multiples": left_mult,
        "strong": strong,
        "bounded": bounded,
    });
    if let Some(d) = s.delta() {
        let deltas: Vec<String> = d.delta.iter().map(|&e| s.name(e).to_string()).collect();
        if deltas.len() == 1 {
            let _ = writeln!(text, "Δ: {}", deltas[0]);
        } else {
            for (x, name) in deltas.iter().enumerate() {
                let _ = writeln!(text, "Δ({}): {name}", g.objects()[x]);
            }
        }
        let phi = cycles(s, &d.phi);
        let _ = writeln!(text, "φ: {phi}");
        j["delta"] = json!(deltas);
        j["phi"] = json!(phi);
    }
    let domino_ok = domino.is_none();
    match &domino {
        None => {
            let _ = writeln!(text, "second domino rule: holds");
        }
        Some(d) => {
            let _ = writeln!(
                text,
                "second domino rule: fails (top {}|{}, verticals {} {} {}, bottom {}|{})",
                s.name(d.top.0),
                s.name(d.top.1),
                s.name(d.verticals.0),
                s.name(d.verticals.1),
                s.name(d.verticals.2),
                s.name(d.bottom.0),
                s.name(d.bottom.1)
            );
        }
    }
    j["second_domino"] = json!(domino_ok);
    let cross = !bounded || strong;
    let _ = writeln!(text, "bounded ⇒ strong: {}", if cross { "ok" } else { "violated" });
    j["bounded_implies_strong"] = json!(cross);
    Ok(Report::new(OK, text, j))
}
