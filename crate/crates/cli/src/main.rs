use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latvoa::autos::{self, Automorphism};
use latvoa::chars::{lattice_char, verify_display, verify_theorem, DisplayId, IdentityReport, VirasoroLabel};
use latvoa::conformal::{build_omega_i, conformal_suite, is_conformal, virasoro_element};
use latvoa::hwv::{census_vs_theorem, commutator_checks, hw_census, hw_census_plus};
use latvoa::lattice::{lattice_facts, theta_series};
use latvoa::report::{Check, Report};
use latvoa::scalar::{format_coord, parse_coord};
use latvoa::vertex::vertex_mode;
use latvoa::{Coord, Coset, Element, Error, Lattice, LatticeVector, Q};

#[derive(Parser)]
#[command(name = "latvoa", version, about = "Exact verification engine for lattice vertex operator algebras")]
struct Cli {
    /// Truncation order for q-series (rational).
    #[arg(long, global = true, value_parser = coord_arg)]
    order: Option<Coord>,
    /// Largest weight of basis vectors to check on.
    #[arg(long, global = true, value_parser = coord_arg)]
    weight_cutoff: Option<Coord>,
    /// Modes L(m), L(n) with |m|, |n| up to this are checked.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(i32).range(0..))]
    mode_range: i32,
    /// Denominator of the exponent grid of q-series; a multiple of 30.
    #[arg(long, global = true, default_value_t = 30)]
    denom: i64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true, env = "VOA_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one group of checks.
    Verify { target: Target },
    /// Theta series of a lattice or coset.
    Theta {
        /// L, N, D, E or F.
        lattice: String,
        /// Coset shift in ambient coordinates, e.g. `[-1/3,1/3,1/3]`.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Divide by prod(1-q^n)^rank, giving the character of the Fock module.
        #[arg(long)]
        fock: bool,
    },
    /// Character of the irreducible Virasoro module L(c, h).
    Char {
        #[arg(long, value_parser = coord_arg)]
        c: Coord,
        #[arg(long, value_parser = coord_arg)]
        h: Coord,
    },
    /// Evaluate `u_n v` or apply an automorphism to an element file.
    ElementEval {
        /// Element file for `u`.
        u: PathBuf,
        /// Element file for `v`; requires `--mode`.
        v: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, requires = "v")]
        mode: Option<i32>,
        /// Automorphism applied to the result.
        #[arg(long)]
        apply: Option<Auto>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    LatticeFacts,
    Conformal,
    Images,
    Relations,
    Displays,
    Theorem,
    Census,
}

#[derive(Clone, Copy, ValueEnum)]
enum Auto {
    Psi1,
    Psi2,
    Tau,
    Phi,
    Rho,
    Sigma1,
    Sigma2,
    Sigma3,
}

fn coord_arg(s: &str) -> Result<Coord, String> {
    parse_coord(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::UnknownLattice(_)
            | Error::LabelOutOfRange(_)
            | Error::ExponentDenominator(..) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Engine(e),
        }
    }
}

/// What a command produced: reports to print and extra JSON payload.
struct Outcome {
    reports: Vec<Report>,
    text: Option<String>,
    data: Value,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.reports.iter().all(Report::pass)
    }
}

fn positive(name: &str, c: Option<Coord>, default: i64) -> Result<Coord, Failure> {
    let c = c.unwrap_or_else(|| Coord::from_integer(default));
    if c <= Coord::from_integer(0) {
        return Err(Failure::Usage(format!("--{name} must be positive")));
    }
    Ok(c)
}

fn identity_report(title: &str, ids: &[IdentityReport]) -> Report {
    let mut r = Report::new(title);
    for id in ids {
        let detail = id.first_mismatch.as_ref().map(|m| {
            format!("first mismatch at q^{}: left {} right {}", format_coord(&m.exponent), m.left, m.right)
        });
        r.push(Check::new(format!("{} to q^{}", id.id, format_coord(&id.order)), id.pass, detail));
    }
    r
}

fn verify(cli: &Cli, target: Target) -> Result<Outcome, Failure> {
    let mut data = Value::Null;
    let reports = match target {
        Target::LatticeFacts => vec![lattice_facts()?],
        Target::Conformal => {
            let w = positive("weight-cutoff", cli.weight_cutoff, 4)?;
            let mut sweep = Report::new(format!("virasoro relations to weight {}", format_coord(&w)));
            for i in 1..=4 {
                let v = build_omega_i::<Q>(i)?;
                sweep.push(is_conformal(&format!("omega^{i}"), &v, w, cli.mode_range)?.as_check());
            }
            sweep.push(is_conformal("omega", &virasoro_element::<Q>(), w, cli.mode_range)?.as_check());
            vec![conformal_suite::<Q>()?, sweep]
        }
        Target::Images => vec![autos::verify_images::<Q>()?],
        Target::Relations => {
            let w = positive("weight-cutoff", cli.weight_cutoff, 4)?;
            let tau_w = w.min(Coord::from_integer(3));
            vec![autos::verify_relations::<Q>(w)?, autos::tau_maps_vn_onto_plus::<Q>(tau_w)?]
        }
        Target::Displays => {
            let mut all = Vec::new();
            for id in DisplayId::ALL {
                let order = match cli.order {
                    Some(_) => positive("order", cli.order, 0)?,
                    None => id.default_order(),
                };
                all.extend(verify_display::<Q>(id, order, cli.denom)?);
            }
            data = serde_json::to_value(&all).expect("serializable");
            vec![identity_report("character identities", &all)]
        }
        Target::Theorem => {
            let order = positive("order", cli.order, 15)?;
            let t = verify_theorem::<Q>(order, cli.denom)?;
            let mut r = identity_report("decomposition of V_N", std::slice::from_ref(&t.identity));
            r.push(Check::new(
                "coefficients of q^0, q^1, q^2 are 1, 3, 21",
                t.leading == ["1", "3", "21"],
                Some(t.leading.join(", ")),
            ));
            data = serde_json::to_value(&t).expect("serializable");
            vec![r]
        }
        Target::Census => {
            let w = positive("weight-cutoff", cli.weight_cutoff, 2)?;
            if !w.is_integer() || w > Coord::from_integer(3) {
                return Err(Failure::Usage("census needs an integral --weight-cutoff of at most 3".into()));
            }
            let w = w.to_integer();
            let census = hw_census::<Q>(w)?;
            let mut cross = Report::new("census in V_L^+ for rho(omega^i) at weight 1");
            let plus = hw_census_plus::<Q>(1)?;
            let low: Vec<_> = census.iter().filter(|t| t.weight <= Coord::from_integer(1)).cloned().collect();
            cross.push(Check::new("same tuples as in V_N", plus == low, Some(format!("{} tuples", plus.len()))));
            data = serde_json::to_value(&census).expect("serializable");
            vec![census_vs_theorem::<Q>(w)?, cross, commutator_checks::<Q>(Coord::from_integer(w))?]
        }
    };
    Ok(Outcome { reports, text: None, data })
}

fn lattice_arg(name: &str, shift: Option<&str>) -> Result<Coset, Failure> {
    let lat = Lattice::named(name.parse()?);
    Ok(match shift {
        Some(s) => Coset::new(lat, s.parse::<LatticeVector>()?),
        None => Coset::trivial(lat),
    })
}

fn read_element(path: &PathBuf) -> Result<Element, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Element::from_text(&text)?)
}

fn automorphism(a: Auto) -> latvoa::Result<Automorphism<Q>> {
    Ok(match a {
        Auto::Psi1 => autos::psi1(),
        Auto::Psi2 => autos::psi2(),
        Auto::Tau => autos::tau()?,
        Auto::Phi => autos::phi(),
        Auto::Rho => autos::rho()?,
        Auto::Sigma1 => autos::sigma(0)?,
        Auto::Sigma2 => autos::sigma(1)?,
        Auto::Sigma3 => autos::sigma(2)?,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if cli.denom <= 0 || cli.denom % 30 != 0 {
        return Err(Failure::Usage(format!("--denom {} is not a positive multiple of 30", cli.denom)));
    }
    match &cli.command {
        Command::Verify { target } => verify(cli, *target),
        Command::Theta { lattice, shift, fock } => {
            let c = lattice_arg(lattice, shift.as_deref())?;
            let order = positive("order", cli.order, 15)?;
            let s = if *fock {
                lattice_char::<Q>(&c, cli.denom, order)?
            } else {
                theta_series::<Q>(&c, order, cli.denom)?
            };
            Ok(Outcome {
                reports: Vec::new(),
                text: Some(s.to_string()),
                data: json!({ "coset": c.to_string(), "order": format_coord(&order), "series": s.to_lines() }),
            })
        }
        Command::Char { c, h } => {
            let order = positive("order", cli.order, 15)?;
            let label = VirasoroLabel::new(*c, *h)?;
            let s = label.character::<Q>(cli.denom, order)?;
            Ok(Outcome {
                reports: Vec::new(),
                text: Some(s.to_string()),
                data: json!({ "c": format_coord(c), "h": format_coord(h), "series": s.to_lines() }),
            })
        }
        Command::ElementEval { u, v, mode, apply } => {
            let mut out = read_element(u)?;
            if let Some(v) = v {
                let n = mode.ok_or_else(|| Failure::Usage("--mode is required with a second element".into()))?;
                out = vertex_mode(&out, n, &read_element(v)?)?;
            }
            if let Some(a) = apply {
                out = automorphism(*a)?.apply(&out)?;
            }
            Ok(Outcome { reports: Vec::new(), text: Some(out.to_text()), data: json!({ "element": out.to_text() }) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let pass = outcome.pass();
    if cli.json {
        let mut v = json!({ "pass": pass, "reports": outcome.reports });
        if !outcome.data.is_null() {
            v["data"] = outcome.data;
        }
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        if let Some(t) = &outcome.text {
            println!("{}", t.trim_end());
        }
        for r in &outcome.reports {
            print!("{r}");
        }
        if !outcome.reports.is_empty() {
            let failed: usize = outcome.reports.iter().map(|r| r.failures().count()).sum();
            if failed == 0 {
                println!("all checks passed");
            } else {
                println!("{failed} checks failed");
            }
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
