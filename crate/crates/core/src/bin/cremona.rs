use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use cremona_core::distortion::{
    ball, baumslag_solitar, bs_witnesses, cyclic, free_abelian, free_group2, involution,
    jordan3_template, monomial_translation_word, nilpotent_commutator_witness, nilpotent_corner,
    nilpotent_example, profile_from_ball, sl2_doubling_witness, BallCaps, GroupElement, GroupSpec,
    Word,
};
use cremona_core::error::Error;
use cremona_core::heights::{
    distortion_class_of_linear, fixture_generator_sets, map_height, verify_word_height,
};
use cremona_core::hyperbolic::{
    disjointness_certificate, epsilon_constants, horoball_witness_search, sample_isotropic,
    CertificateStatus, Family, PMClass, WitnessBudget, WitnessOutcome,
};
use cremona_core::linalg::RatMatrix;
use cremona_core::maps::{
    classify_growth, dynamical_degree_estimate, iterate_degrees, BirMap, IterCaps,
};
use cremona_core::polynomials::Rational;

const SCHEMA: &str = "cremona-report/1";

#[derive(Parser, Serialize, Debug)]
#[command(
    name = "cremona",
    version,
    about = "Degrees, heights, horoballs and distortion in Cremona groups"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(tag = "name", rename_all = "kebab-case")]
enum Command {
    /// Degree sequence, growth type and dynamical degree of a map.
    Degrees {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 1 << 16)]
        cap_degree: u64,
        #[arg(long, default_value_t = 2_000_000)]
        cap_terms: usize,
    },
    /// Height of a map, or the word-height bound on a fixture generating set.
    Height {
        #[arg(long)]
        map: Option<String>,
        /// Fixture generating set: sigma, sigma+diag, jonquieres+swap or all.
        #[arg(long)]
        gen: Option<String>,
        /// Number of random words.
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Distortion class of a projective linear map.
    ClassifyLinear {
        /// Rows as JSON, entries integers or "p/q" strings: [[2,1],[1,1]].
        #[arg(long)]
        matrix: String,
    },
    /// Disjointness certificate and witness search for horoball pairs.
    Horoball {
        /// J or H.
        #[arg(long, default_value = "J")]
        family: String,
        /// Class as JSON: {"e0":"5","exc":{"q1":"3","q2":"4"}}. Random
        /// isotropic classes are sampled when absent.
        #[arg(long)]
        hw: Option<String>,
        #[arg(long, default_value_t = 0.36)]
        epsilon: f64,
        /// Number of random classes.
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        m_max: u32,
        /// How many certified pairs get a witness search.
        #[arg(long, default_value_t = 10)]
        search: usize,
        #[arg(long, default_value_t = 1000)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
    },
    /// Distortion profile of an element from a ball in the Cayley graph.
    Distortion {
        /// Z, Z^r, F2, sigma, BS(1,k) or UT(n).
        #[arg(long)]
        group: String,
        /// Word in the generators, e.g. "t x t^-1"; "corner" in UT(n).
        #[arg(long)]
        gen: Option<String>,
        /// Ball radius.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Use the generating set S^k.
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cap_elements: usize,
        #[arg(long, default_value_t = 4096)]
        cap_bits: u64,
        #[arg(long, default_value_t = 64)]
        cap_degree: u32,
    },
    /// Build and verify an explicit short word.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long = "K", default_value_t = 2)]
        k: i64,
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        l: i64,
        /// Nilpotency depth.
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Matrix for the monomial kind, as for classify-linear.
        #[arg(long)]
        matrix: Option<String>,
        /// Translation vector for the monomial kind: "1000000,-3".
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// The horoball thresholds.
    Constants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum WitnessKind {
    Sl2,
    Jordan3,
    Monomial,
    Nilpotent,
    Bs,
}

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Report<'a> {
    schema: &'static str,
    tool: Tool,
    config: &'a Cli,
    truncated: bool,
    result: Value,
}

/// A command's result plus an optional CSV rendering.
struct Outcome {
    result: Value,
    truncated: bool,
    csv: Option<String>,
}

impl Outcome {
    fn json(result: Value) -> Self {
        Outcome {
            result,
            truncated: false,
            csv: None,
        }
    }
}

enum Failure {
    Usage(String),
    Hard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_) | Error::ExpansionFailed(_) | Error::CapExceeded(_) => {
                Failure::Hard(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_rational(v: &Value) -> Result<Rational, Failure> {
    let bad = || Failure::Usage(format!("bad matrix entry {v}"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(bad),
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn parse_matrix(s: &str) -> Result<RatMatrix, Failure> {
    let v: Value = serde_json::from_str(s)?;
    let rows = v
        .as_array()
        .ok_or_else(|| Failure::Usage("matrix must be a JSON array of rows".into()))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Failure::Usage("matrix rows must be arrays".into()))?
                .iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatMatrix::from_rows(rows)?)
}

fn parse_vector(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("bad vector entry {t:?}")))
        })
        .collect()
}

fn degrees(map: &str, n: usize, caps: IterCaps) -> Result<Outcome, Failure> {
    let f = BirMap::parse(map)?;
    let seq = iterate_degrees(&f, n, caps)?;
    let dd = dynamical_degree_estimate(&seq).ok();
    let verdict = classify_growth(&seq);
    let csv = seq
        .degrees
        .iter()
        .enumerate()
        .fold(String::from("n,degree\n"), |mut s, (i, d)| {
            s.push_str(&format!("{},{}\n", i + 1, d));
            s
        });
    Ok(Outcome {
        truncated: seq.truncated,
        result: json!({
            "sequence": to_value(&seq),
            "growth": to_value(&verdict),
            "dynamical_degree": to_value(&dd),
        }),
        csv: Some(csv),
    })
}

fn height(
    map: Option<&str>,
    gen: Option<&str>,
    n: usize,
    max_len: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let mut result = serde_json::Map::new();
    if let Some(m) = map {
        let f = BirMap::parse(m)?;
        result.insert("map".into(), Value::String(f.to_string()));
        result.insert("height".into(), to_value(&map_height(&f)));
    }
    if let Some(name) = gen {
        let sets: Vec<_> = fixture_generator_sets()
            .into_iter()
            .filter(|s| name == "all" || s.name == name)
            .collect();
        if sets.is_empty() {
            return Err(Failure::Usage(format!("unknown generating set {name:?}")));
        }
        let reports = sets
            .iter()
            .map(|s| verify_word_height(s, n, max_len, seed).map(|r| to_value(&r)))
            .collect::<Result<Vec<_>, _>>()?;
        let violations: u64 = reports
            .iter()
            .map(|r| r["violations"].as_u64().unwrap_or(0))
            .sum();
        result.insert("word_height".into(), Value::Array(reports));
        if violations > 0 {
            let out = Value::Object(result);
            return Err(Failure::Hard(format!("word-height bound violated: {out}")));
        }
    }
    if result.is_empty() {
        return Err(Failure::Usage("height needs --map or --gen".into()));
    }
    Ok(Outcome::json(Value::Object(result)))
}

#[allow(clippy::too_many_arguments)]
fn horoball(
    family: &str,
    hw: Option<&str>,
    epsilon: f64,
    n: usize,
    m_max: u32,
    search: usize,
    budget: WitnessBudget,
) -> Result<Outcome, Failure> {
    let family: Family = family.parse()?;
    let w = family.reference_class();
    let pair = |hw: &PMClass| -> Result<Value, Failure> {
        let cert = disjointness_certificate(hw, family, epsilon)?;
        let search = horoball_witness_search(&w, hw, epsilon, &budget)?;
        if cert.status == CertificateStatus::Certified {
            if let WitnessOutcome::Found { .. } = search {
                return Err(Failure::Hard(format!(
                    "certified pair has a common point: {}",
                    to_value(&search)
                )));
            }
        }
        Ok(
            json!({ "hw": to_value(hw), "certificate": to_value(&cert), "search": to_value(&search) }),
        )
    };
    if let Some(text) = hw {
        let hw: PMClass = serde_json::from_str(text)?;
        return Ok(Outcome::json(pair(&hw)?));
    }
    if family != Family::J {
        return Err(Failure::Usage(
            "random sampling is only available for family J".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let samples: Vec<PMClass> = (0..n).map(|_| sample_isotropic(&mut rng, m_max)).collect();
    let mut certified = Vec::new();
    let mut uncertified = Vec::new();
    for hw in &samples {
        let c = disjointness_certificate(hw, family, epsilon)?;
        if c.status == CertificateStatus::Certified {
            certified.push(hw);
        } else {
            uncertified.push(json!({ "hw": to_value(hw), "certificate": to_value(&c) }));
        }
    }
    let searched = certified
        .iter()
        .take(search)
        .map(|hw| pair(hw))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::json(json!({
        "samples": n,
        "certified": certified.len(),
        "not_certified": uncertified,
        "searched": searched,
    })))
}

/// `a b^-2 c` in the letters of `g`.
fn parse_word<E: GroupElement>(g: &GroupSpec<E>, s: &str) -> Result<Word, Failure> {
    let mut w = Word::new([]);
    for tok in s.split_whitespace() {
        let (name, e) = match tok.split_once('^') {
            Some((name, e)) => (
                name,
                e.parse::<i64>()
                    .map_err(|_| Failure::Usage(format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        let i = g.letter_index(name).ok_or_else(|| {
            Failure::Usage(format!("unknown letter {name:?}; have {:?}", g.names()))
        })?;
        w.push(i, e);
    }
    Ok(w)
}

fn profile<E: GroupElement>(
    g: GroupSpec<E>,
    c: Option<E>,
    gen: Option<&str>,
    n: usize,
    power: usize,
    caps: &BallCaps,
) -> Result<Outcome, Failure> {
    let c = match (c, gen) {
        (Some(c), _) => c,
        (None, Some(s)) => g.evaluate(&parse_word(&g, s)?)?,
        (None, None) => g.letters[0].elem.clone(),
    };
    let g = if power > 1 {
        g.power_generators(power, caps)?
    } else {
        g
    };
    let b = ball(&g, n, caps)?;
    let p = profile_from_ball(&g, &b, &c)?;
    Ok(Outcome {
        truncated: p.truncated,
        csv: Some(p.to_csv()),
        result: json!({ "generators": g.names(), "profile": to_value(&p) }),
    })
}

fn distortion(
    group: &str,
    gen: Option<&str>,
    n: usize,
    power: usize,
    caps: &BallCaps,
) -> Result<Outcome, Failure> {
    let g = group.trim();
    let inner = |prefix: &str| {
        g.strip_prefix(prefix)
            .and_then(|r| r.strip_suffix(')'))
            .map(|r| r.trim().parse::<i64>())
    };
    if g == "Z" {
        return profile(cyclic(), None, gen, n, power, caps);
    }
    if let Some(r) = g.strip_prefix("Z^") {
        let r = r
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("bad rank in {g:?}")))?;
        return profile(free_abelian(r)?, None, gen, n, power, caps);
    }
    if g == "F2" {
        return profile(free_group2(), None, gen, n, power, caps);
    }
    if g == "sigma" {
        return profile(involution(), None, gen, n, power, caps);
    }
    if let Some(k) = inner("BS(1,") {
        let k = k.map_err(|_| Failure::Usage(format!("bad parameter in {g:?}")))?;
        return profile(baumslag_solitar(k)?, None, gen, n, power, caps);
    }
    if let Some(m) = inner("UT(") {
        let m = m.map_err(|_| Failure::Usage(format!("bad size in {g:?}")))?;
        let d = usize::try_from(m - 2).map_err(|_| Failure::Usage("UT(n) needs n >= 3".into()))?;
        let ut = nilpotent_example(d)?;
        let corner = (gen == Some("corner")).then(|| nilpotent_corner(d));
        return profile(ut, corner, gen, n, power, caps);
    }
    Err(Failure::Usage(format!(
        "unknown group {g:?}; expected Z, Z^r, F2, sigma, BS(1,k) or UT(n)"
    )))
}

fn witness(
    kind: WitnessKind,
    k: i64,
    n: u32,
    l: i64,
    d: usize,
    matrix: Option<&str>,
    target: Option<&str>,
) -> Result<Outcome, Failure> {
    let v = match kind {
        WitnessKind::Sl2 => to_value(&sl2_doubling_witness(n)?),
        WitnessKind::Jordan3 => to_value(&jordan3_template(k, n)?),
        WitnessKind::Monomial => {
            let m = parse_matrix(
                matrix.ok_or_else(|| Failure::Usage("monomial needs --matrix".into()))?,
            )?;
            let t = parse_vector(
                target.ok_or_else(|| Failure::Usage("monomial needs --target".into()))?,
            )?;
            to_value(&monomial_translation_word(&m, &t)?)
        }
        WitnessKind::Nilpotent => to_value(&nilpotent_commutator_witness(d, i64::from(n))?),
        WitnessKind::Bs => to_value(&bs_witnesses(k, l, n)?),
    };
    Ok(Outcome::json(v))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Degrees {
            map,
            n,
            cap_degree,
            cap_terms,
        } => {
            if *cap_degree == 0 || *cap_terms == 0 {
                return Err(Failure::Usage("caps must be positive".into()));
            }
            degrees(
                map,
                *n,
                IterCaps {
                    degree_cap: *cap_degree,
                    term_cap: *cap_terms,
                },
            )
        }
        Command::Height {
            map,
            gen,
            n,
            max_len,
        } => height(map.as_deref(), gen.as_deref(), *n, *max_len, cli.seed),
        Command::ClassifyLinear { matrix } => {
            let m = parse_matrix(matrix)?;
            Ok(Outcome::json(to_value(&distortion_class_of_linear(&m)?)))
        }
        Command::Horoball {
            family,
            hw,
            epsilon,
            n,
            m_max,
            search,
            restarts,
            max_iters,
        } => {
            let budget = WitnessBudget {
                restarts: *restarts,
                seed: cli.seed,
                max_iters: *max_iters,
            };
            horoball(family, hw.as_deref(), *epsilon, *n, *m_max, *search, budget)
        }
        Command::Distortion {
            group,
            gen,
            n,
            power,
            cap_elements,
            cap_bits,
            cap_degree,
        } => {
            if *cap_elements == 0 || *cap_bits == 0 || *cap_degree == 0 || *power == 0 {
                return Err(Failure::Usage("caps and power must be positive".into()));
            }
            let caps = BallCaps {
                max_elements: *cap_elements,
                max_bits: *cap_bits,
                max_degree: *cap_degree,
            };
            distortion(group, gen.as_deref(), *n, *power, &caps)
        }
        Command::Witness {
            kind,
            k,
            n,
            l,
            d,
            matrix,
            target,
        } => witness(*kind, *k, *n, *l, *d, matrix.as_deref(), target.as_deref()),
        Command::Constants => Ok(Outcome::json(to_value(&epsilon_constants()))),
    }
}

fn render(cli: &Cli, out: Outcome) -> Result<String, Failure> {
    let report = Report {
        schema: SCHEMA,
        tool: Tool {
            name: "cremona",
            version: env!("CARGO_PKG_VERSION"),
        },
        config: cli,
        truncated: out.truncated,
        result: out.result,
    };
    match cli.format {
        Format::Json => Ok(serde_json::to_string_pretty(&report)? + "\n"),
        Format::Csv => {
            let body = out.csv.ok_or_else(|| {
                Failure::Usage("csv output is available for degrees and distortion".into())
            })?;
            let header = json!({
                "schema": report.schema,
                "tool": report.tool,
                "config": report.config,
                "truncated": report.truncated,
            });
            Ok(format!("# {header}\n{body}"))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| render(&cli, o));
    match result {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Hard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
