//! Command-line front end. Reports go to stdout as JSON; timings go to
//! stderr. Exit codes: 0 pass, 1 verification failure, 2 usage error.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::daha::{is_regular_combinatorial, is_regular_pairing, verify_daha, RegSeq};
use crate::diagrams::{character_series, diagram_from_r, enumerate, verify_characters, FiniteSkew, SemiDiagram};
use crate::error::{Error, Result};
use crate::tensor_space::{DunklParams, Ranks};
use crate::wedge_fock::Window;
use crate::yangian::{
    intertwining_check, q1_check, q2_check, rtt_check, stability_check, verify_hw_finite, verify_hw_fock, Report,
};

pub const DEFAULT_ORDER: usize = 4;

/// Largest diagram degree the highest-weight suites accept.
pub const MAX_HW_DEGREE: i64 = 3;

#[derive(Parser, Debug)]
#[command(name = "yfock", about = "Yangian actions on Fock spaces, diagrams and verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RankArgs {
    #[arg(id = "rank_n", long = "N", default_value_t = 2)]
    pub n: i64,
    #[arg(id = "rank_l", long = "L", default_value_t = 2)]
    pub l: i64,
}

impl RankArgs {
    fn ranks(&self) -> Result<Ranks> {
        if self.n < 2 || self.l < 2 {
            return Err(Error::Invalid(format!("need N, L >= 2, got N={}, L={}", self.n, self.l)));
        }
        Ranks::new(self.n, self.l)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Semi-infinite diagrams with their Drinfeld data, grouped by degree.
    Diagrams {
        #[command(flatten)]
        ranks: RankArgs,
        #[arg(long, default_value_t = 2)]
        dmax: i64,
    },
    /// Regularity verdict for `r` (comma list) plus its diagram when regular.
    Regular {
        #[arg(long = "L")]
        l: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Runs a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        ranks: RankArgs,
        /// Window level.
        #[arg(long, default_value_t = 1)]
        l: i64,
        /// Window degree bound.
        #[arg(long, default_value_t = 1)]
        d: i64,
        #[arg(long, default_value_t = 2)]
        dmax: i64,
        /// Series order; defaults to `YF_ORDER` or 4.
        #[arg(long)]
        order: Option<usize>,
        /// `vacuum` or a comma list of `h_1, h_2, ...`; all diagrams up to
        /// `--dmax` when absent.
        #[arg(long)]
        diagram: Option<String>,
        /// Number of tensor factors for the dDAHA suite.
        #[arg(id = "factors", long = "n", default_value_t = 3)]
        factors: usize,
        /// Bound on `|kund|` for the dDAHA suite.
        #[arg(long, default_value_t = 2)]
        kmax: i64,
    },
    /// `sl_N` characters of the degree pieces, as exponent lists.
    Character {
        #[command(flatten)]
        ranks: RankArgs,
        #[arg(long, default_value_t = 2)]
        dmax: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Daha,
    Rtt,
    Hw,
    FockHw,
    Characters,
    QEmbed,
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(e: impl std::fmt::Display) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn order_from_env() -> usize {
    std::env::var("YF_ORDER").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_ORDER)
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("not an integer: {x}"))))
        .collect()
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses and runs one command line; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    match cli.command {
        Command::Diagrams { ranks, dmax } => run_diagrams(ranks, dmax),
        Command::Regular { l, m, r } => run_regular(l, m, &r),
        Command::Verify { suite, ranks, l, d, dmax, order, diagram, factors, kmax } => {
            let order = order.unwrap_or_else(order_from_env);
            let opts = VerifyOpts { ranks, l, d, dmax, order, diagram, n: factors, kmax };
            run_verify(suite, &opts)
        }
        Command::Character { ranks, dmax } => run_character(ranks, dmax),
    }
}

pub fn run_diagrams(ranks: RankArgs, dmax: i64) -> Outcome {
    let r = match ranks.ranks() {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if dmax < 0 {
        return usage("dmax must be nonnegative");
    }
    let groups: Vec<Value> = enumerate(r, dmax)
        .into_iter()
        .enumerate()
        .map(|(d, sds)| json!({ "degree": d, "diagrams": sds.iter().map(|sd| sd.to_json()).collect::<Vec<_>>() }))
        .collect();
    Outcome { code: 0, stdout: pretty(&groups), stderr: String::new() }
}

fn diagram_json(fs: &FiniteSkew) -> Value {
    let squares: Vec<[i64; 2]> = fs.squares().into_iter().map(|(i, j)| [i, j]).collect();
    json!({ "L": fs.l, "starts": fs.starts, "squares": squares })
}

pub fn run_regular(l: i64, m: i64, r: &str) -> Outcome {
    let seq = match parse_list(r).and_then(|v| RegSeq::new(l, v)) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    if seq.m() != m {
        return usage(format!("r has m = {}, flag says {m}", seq.m()));
    }
    let a = is_regular_pairing(&seq);
    let b = is_regular_combinatorial(&seq);
    if a != b {
        let out = json!({ "error": "regularity tests disagree", "pairing": a, "combinatorial": b });
        return Outcome { code: 1, stdout: pretty(&out), stderr: String::new() };
    }
    let out = if a {
        match FiniteSkew::from_squares(l, &diagram_from_r(&seq)) {
            Ok(fs) => json!({ "regular": true, "diagram": diagram_json(&fs) }),
            Err(e) => {
                let out = json!({ "error": format!("regular r with non-skew diagram: {e}") });
                return Outcome { code: 1, stdout: pretty(&out), stderr: String::new() };
            }
        }
    } else {
        json!({ "regular": false })
    };
    Outcome { code: 0, stdout: pretty(&out), stderr: String::new() }
}

pub fn run_character(ranks: RankArgs, dmax: i64) -> Outcome {
    let r = match ranks.ranks() {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if dmax < 0 {
        return usage("dmax must be nonnegative");
    }
    let series: Vec<Value> = character_series(r, dmax)
        .into_iter()
        .enumerate()
        .map(|(d, ch)| {
            let terms: Vec<Value> = ch.into_iter().map(|(e, c)| json!({ "exponents": e, "coeff": c })).collect();
            json!({ "degree": d, "terms": terms })
        })
        .collect();
    Outcome { code: 0, stdout: pretty(&series), stderr: String::new() }
}

#[derive(Clone, Debug)]
pub struct VerifyOpts {
    pub ranks: RankArgs,
    pub l: i64,
    pub d: i64,
    pub dmax: i64,
    pub order: usize,
    pub diagram: Option<String>,
    pub n: usize,
    pub kmax: i64,
}

fn selected_diagrams(r: Ranks, o: &VerifyOpts) -> Result<Vec<SemiDiagram>> {
    let sds = match o.diagram.as_deref() {
        Some("vacuum") => Ok(vec![SemiDiagram::vacuum(r)]),
        Some(h) => {
            let sd = SemiDiagram::from_prefix(r, &parse_list(h)?)?;
            Ok(vec![sd])
        }
        None => Ok(enumerate(r, o.dmax).into_iter().flatten().collect()),
    }?;
    if let Some(sd) = sds.iter().find(|sd| sd.degree() > MAX_HW_DEGREE) {
        return Err(Error::Invalid(format!("diagram degree {} exceeds {MAX_HW_DEGREE}", sd.degree())));
    }
    Ok(sds)
}

fn suite_report(suite: Suite, o: &VerifyOpts, log: &mut String) -> Result<Report> {
    let r = o.ranks.ranks()?;
    let mut timed = |id: &str, f: &mut dyn FnMut() -> Result<Report>| -> Result<Report> {
        let t = Instant::now();
        let rep = f()?;
        log.push_str(&format!("{id}: {:.3}s\n", t.elapsed().as_secs_f64()));
        Ok(rep)
    };
    let window = || -> Result<Window> {
        if o.l < o.d {
            return Err(Error::Invalid(format!("window level {} is below degree {}", o.l, o.d)));
        }
        Window::new(r, 0, o.l, o.d)
    };
    Ok(match suite {
        Suite::Daha => timed("daha", &mut || verify_daha(r, o.n, o.kmax))?,
        Suite::Rtt => {
            let w = window()?;
            timed("rtt", &mut || rtt_check(w, &DunklParams::standard(r), o.order))?
        }
        Suite::Hw => {
            let mut rep = Report::new("hw");
            for sd in selected_diagrams(r, o)? {
                let id = format!("hw {:?}", sd.overrides());
                let fs = sd.finite_part(sd.degree().max(1))?;
                let seq = fs.r()?;
                rep.extend(timed(&id, &mut || verify_hw_finite(&seq, r.n, o.order))?);
            }
            rep
        }
        Suite::FockHw => {
            let mut rep = Report::new("fock-hw");
            let mut deltas = Vec::new();
            for sd in selected_diagrams(r, o)? {
                let t = Instant::now();
                let hw = verify_hw_fock(&sd, o.order)?;
                log.push_str(&format!("fock-hw {:?}: {:.3}s\n", sd.overrides(), t.elapsed().as_secs_f64()));
                rep.extend(hw.report);
                deltas.push(hw.delta);
            }
            let distinct = deltas.iter().enumerate().all(|(i, a)| {
                a.is_some() && deltas[..i].iter().all(|b| b != a)
            });
            rep.push("qdet series distinct", distinct, format!("{} diagrams", deltas.len()));
            rep
        }
        Suite::Characters => timed("characters", &mut || verify_characters(r, o.dmax))?,
        Suite::QEmbed => {
            let w = window()?;
            let mut rep = Report::new("q-embed");
            rep.extend(timed("q1", &mut || q1_check(w))?);
            rep.extend(timed("q2", &mut || q2_check(w))?);
            rep.extend(timed("intertwining", &mut || intertwining_check(w, &DunklParams::standard(r), o.order))?);
            rep.extend(timed("stability", &mut || stability_check(w, o.order))?);
            rep
        }
    })
}

pub fn run_verify(suite: Suite, o: &VerifyOpts) -> Outcome {
    let mut log = String::new();
    match suite_report(suite, o, &mut log) {
        Ok(rep) => Outcome { code: if rep.passed() { 0 } else { 1 }, stdout: pretty(&rep), stderr: log },
        Err(e) => usage(e),
    }
}
