//! Subcommands and their JSON reports.

use std::collections::BTreeMap;

use bodies::{
    associativity_defect, factor_suitable_supersur, hom_basis, hom_complex, identity, leibniz_defect,
    MorphismElement, Tower, Variant,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mellin::{finite_part, mellin_z, pole_scan, verify_qm_identity, ProfileFamily, RadialProfile};
use msystem::{build_m_complex, lowest_degree, shuffle_factorization};
use num_complex::Complex64;
use num_rational::Rational64;
use posets::{enumerate_zebra, IntervalIndex, ZebraElement};
use resolution::build_r_complex;
use serde_json::{json, Value};
use setcore::text::parse_map;
use setcore::{enumerate_partitions, strict_chains, FinSet, SetMap};
use symmetrize::{total_differential_residues, OperatorOptions, Signs};

use crate::grammar::{one_based, parse_interval, parse_square, parse_tower};
use crate::suite::{criterion_ids, run_suite};
use crate::CliError;

/// Exact computations on partitions, towers and their complexes.
#[derive(Debug, Parser)]
#[command(name = "opecalc", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All partitions of {1, …, n}.
    Partitions { n: usize },
    /// The complex m_p of a surjection.
    MComplex {
        /// The surjection p, e.g. "[4]->pt" or "1,2->a;3->b".
        #[arg(long)]
        p: String,
        /// Report homology ranks.
        #[arg(long)]
        betti: bool,
    },
    /// Checks that the shuffle factorization of a family is a chain map.
    ShuffleCheck {
        /// Sizes n of a family of maps [n] -> pt, e.g. "2,3".
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Further members of the family, as maps.
        #[arg(long)]
        p: Vec<String>,
    },
    /// Zebra elements of an interval [e, f].
    Zebra {
        #[arg(long)]
        f: String,
        #[arg(long)]
        e: String,
        /// Check the poset axioms, monotonicity of nu, least elements and
        /// initial objects exhaustively.
        #[arg(long)]
        verify_poset: bool,
    },
    /// The resolution shadow on an interval [e, f].
    Resolution {
        #[arg(long)]
        f: String,
        #[arg(long)]
        e: String,
        /// Report homology ranks.
        #[arg(long)]
        betti: bool,
        /// Compare every associated graded summand with a tensor power of V.
        #[arg(long, conflicts_with = "betti")]
        gr: bool,
    },
    /// Towers, hom-spaces and squares.
    Bodies {
        #[command(subcommand)]
        command: BodiesCommand,
    },
    /// The symmetrization of a surjection.
    Symm {
        #[command(subcommand)]
        command: SymmCommand,
    },
    /// Radial Mellin transforms.
    Mellin {
        #[command(subcommand)]
        command: MellinCommand,
    },
    /// Runs the acceptance battery.
    Suite {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Presymm,
    Symm,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Presymm => Variant::Presymm,
            VariantArg::Symm => Variant::Symm,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum BodiesCommand {
    /// The hom basis H(X, Y).
    Hom {
        /// Source tower, "source:projection:flag".
        #[arg(long = "X", visible_alias = "x")]
        x: String,
        /// Target tower.
        #[arg(long = "Y", visible_alias = "y")]
        y: String,
        #[arg(long, value_enum, default_value = "presymm")]
        variant: VariantArg,
        /// Check d² = 0 on the hom-complex.
        #[arg(long)]
        d2: bool,
        /// Check the Leibniz rule and associativity against the endomorphisms of Y.
        #[arg(long)]
        assoc: bool,
    },
    /// The suitable × super-surjective factorization of a square.
    Factor {
        /// The square as "i;p", e.g. "0,1;0,0,1".
        #[arg(long)]
        square: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SymmCommand {
    /// Checks d(δ) + δ∘δ = 0 with δ = L − R on every object with |U| ≤ max-u.
    Verify {
        #[arg(long)]
        f: String,
        #[arg(long)]
        max_u: usize,
        #[arg(long, value_enum, default_value = "symm")]
        variant: VariantArg,
    },
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// bump, exponential or poly-bump.
    #[arg(long)]
    profile: String,
    /// Even ambient dimension.
    #[arg(long = "N", visible_alias = "n")]
    n: u32,
}

impl ProfileArgs {
    fn profile(&self) -> Result<RadialProfile, CliError> {
        Ok(RadialProfile::new(self.profile.parse::<ProfileFamily>()?))
    }
}

#[derive(Debug, Subcommand)]
pub enum MellinCommand {
    /// Z(s) at a complex point "re" or "re,im".
    Value {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// U_M and the pole coefficient at s = −M.
    FinitePart {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long = "M", visible_alias = "m")]
        m: u32,
    },
    /// Checks U_M(q^M h) = Z(h, 0) within 1e−6.
    Verify {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long = "M", visible_alias = "m")]
        m: u32,
    },
    /// Poles in an open window of the real axis.
    Poles {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Lower end; defaults to −N/2 − 4.
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<f64>,
        /// Upper end.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        hi: f64,
        /// Accepted for uniformity with the other subcommands.
        #[arg(long = "M", visible_alias = "m")]
        m: Option<u32>,
    },
}

/// A command's verdict and its JSON body.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Whether every requested check passed.
    pub ok: bool,
    /// The report body, without the schema field.
    pub body: Value,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { ok: true, body }
    }
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Partitions { n } => partitions(*n),
        Command::MComplex { p, betti } => m_complex(p, *betti),
        Command::ShuffleCheck { sizes, p } => shuffle_check(sizes, p),
        Command::Zebra { f, e, verify_poset } => zebra(f, e, *verify_poset),
        Command::Resolution { f, e, betti, gr } => resolution_cmd(f, e, *betti, *gr),
        Command::Bodies { command: BodiesCommand::Hom { x, y, variant, d2, assoc } } => {
            bodies_hom(x, y, (*variant).into(), *d2, *assoc)
        }
        Command::Bodies { command: BodiesCommand::Factor { square } } => bodies_factor(square),
        Command::Symm { command: SymmCommand::Verify { f, max_u, variant } } => symm_verify(f, *max_u, (*variant).into()),
        Command::Mellin { command } => mellin_cmd(command),
        Command::Suite { criterion } => suite(criterion),
    }
}

fn map_json(p: &SetMap) -> Value {
    let pairs: Vec<[&str; 2]> =
        (0..p.source().size()).map(|x| [p.source().label(x), p.target().label(p.image(x))]).collect();
    json!(pairs)
}

fn degrees<K: ToString, V: serde::Serialize>(m: &BTreeMap<K, V>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn partitions(n: usize) -> Result<Report, CliError> {
    let carrier = one_based(n);
    let list: Vec<String> = enumerate_partitions(n)?.iter().map(|p| p.compact_with(&carrier)).collect();
    Ok(Report::ok(json!({ "command": "partitions", "n": n, "count": list.len(), "partitions": list })))
}

fn m_complex(text: &str, betti: bool) -> Result<Report, CliError> {
    let p = parse_map(text)?;
    let m = build_m_complex(&p)?;
    let squares = m.complex.check_d_squared();
    let mut body = json!({
        "command": "m-complex",
        "map": map_json(&p),
        "dims": degrees(&m.complex.dims()),
        "d_squared_zero": squares.holds,
    });
    let mut ok = squares.holds;
    if betti {
        let ranks = m.complex.betti()?.nonzero();
        let lowest = lowest_degree(&p);
        let concentrated = ranks.keys().all(|&d| d == lowest);
        body["betti"] = degrees(&ranks);
        body["lowest_degree"] = json!(lowest);
        body["concentrated"] = json!(concentrated);
        ok &= concentrated;
    }
    if let Some(w) = squares.witness {
        body["witness"] = json!(w);
    }
    Ok(Report { ok, body })
}

fn shuffle_check(sizes: &[usize], extra: &[String]) -> Result<Report, CliError> {
    let mut family: Vec<SetMap> = sizes.iter().map(|&n| SetMap::to_point(n)).collect();
    for text in extra {
        family.push(parse_map(text)?);
    }
    if family.is_empty() {
        return Err(CliError::Usage("shuffle-check needs --sizes or --p".into()));
    }
    let fact = shuffle_factorization(&family)?;
    let report = fact.check()?;
    let mut body = json!({
        "command": "shuffle-check",
        "family": family.iter().map(map_json).collect::<Vec<_>>(),
        "source_dims": degrees(&fact.source.dims()),
        "target_dims": degrees(&fact.target.complex.dims()),
        "chain_map": report.holds,
    });
    if let Some(w) = &report.witness {
        body["witness"] = json!(w);
    }
    Ok(Report { ok: report.holds, body })
}

fn zebra_text(z: &ZebraElement, carrier: &FinSet) -> String {
    let mut out = format!("({}", z.flag()[0].compact_with(carrier));
    for (c, p) in z.colors().iter().zip(&z.flag()[1..]) {
        out.push_str(&format!(" {} {}", c.symbol(), p.compact_with(carrier)));
    }
    out.push(')');
    out
}

fn zebra(f: &str, e: &str, verify: bool) -> Result<Report, CliError> {
    let (carrier, f, e) = parse_interval(f, e)?;
    let elements: Vec<String> = enumerate_zebra(&f, &e)?.iter().map(|z| zebra_text(z, &carrier)).collect();
    let mut body = json!({
        "command": "zebra",
        "f": f.compact_with(&carrier),
        "e": e.compact_with(&carrier),
        "count": elements.len(),
        "elements": elements,
    });
    let mut ok = true;
    if verify {
        let report = IntervalIndex::new(&f, &e)?.verify()?;
        ok = report.all_hold();
        body["poset"] = json!(report);
    }
    Ok(Report { ok, body })
}

fn resolution_cmd(f: &str, e: &str, betti: bool, gr: bool) -> Result<Report, CliError> {
    let (carrier, f, e) = parse_interval(f, e)?;
    let r = build_r_complex(&f, &e)?;
    let squares = r.complex.check_d_squared();
    let mut ok = squares.holds;
    let mut body = json!({
        "command": "resolution",
        "f": f.compact_with(&carrier),
        "e": e.compact_with(&carrier),
        "words": r.words.len(),
        "dims": degrees(&r.complex.dims()),
        "d_squared_zero": squares.holds,
    });
    if betti {
        let ranks = r.complex.betti()?.nonzero();
        let expected = if f == e { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
        ok &= ranks == expected;
        body["betti"] = degrees(&ranks);
        body["acyclic"] = json!(ranks.is_empty());
    }
    if gr {
        let mut pieces = Vec::new();
        for phi in strict_chains(&f, &e)? {
            let report = resolution::graded_piece_vs_tv(&r, &phi)?;
            ok &= report.isomorphic;
            let flag: Vec<String> = phi.iter().map(|p| p.compact_with(&carrier)).collect();
            pieces.push(json!({ "flag": flag.join(" > "), "report": report }));
        }
        body["graded_pieces"] = json!(pieces);
    }
    Ok(Report { ok, body })
}

fn element_json(m: &MorphismElement) -> Value {
    json!(m.terms().iter().map(|(l, c)| json!([c.to_string(), l.to_string()])).collect::<Vec<_>>())
}

fn bodies_hom(x: &str, y: &str, variant: Variant, d2: bool, assoc: bool) -> Result<Report, CliError> {
    let x = parse_tower(x)?;
    let y = parse_tower(y)?;
    let basis = hom_basis(&x, &y, variant)?;
    let mut ok = true;
    let mut body = json!({
        "command": "bodies hom",
        "X": x.to_string(),
        "Y": y.to_string(),
        "variant": variant,
        "basis": basis.iter().map(|l| json!({ "ladder": l.to_string(), "degree": l.degree() })).collect::<Vec<_>>(),
    });
    if d2 {
        let report = hom_complex(&x, &y, variant)?.check_d_squared();
        ok &= report.holds;
        body["d_squared_zero"] = json!(report.holds);
        if let Some(w) = report.witness {
            body["d_squared_witness"] = json!(w);
        }
    }
    if assoc {
        let (checked, witness) = check_against_endomorphisms(&x, &y, variant)?;
        ok &= witness.is_none();
        body["composition_checks"] = json!(checked);
        if let Some(w) = witness {
            body["composition_witness"] = w;
        }
    }
    Ok(Report { ok, body })
}

fn basis_elements(x: &Tower, y: &Tower, variant: Variant) -> Result<Vec<MorphismElement>, CliError> {
    Ok(hom_basis(x, y, variant)?
        .into_iter()
        .map(|l| {
            let mut m = MorphismElement::zero(x.clone(), y.clone(), variant);
            m.add_term(l, Rational64::from_integer(1));
            m
        })
        .collect())
}

/// The Leibniz rule on pairs `X → Y → Y` and associativity on triples
/// `X → Y → Y → Y` of basis elements.
fn check_against_endomorphisms(x: &Tower, y: &Tower, variant: Variant) -> Result<(usize, Option<Value>), CliError> {
    let from_x = basis_elements(x, y, variant)?;
    let mut ends = basis_elements(y, y, variant)?;
    ends.push(identity(y, variant));
    let mut checked = 0;
    for f in &from_x {
        for g in &ends {
            let defect = leibniz_defect(f, g)?;
            checked += 1;
            if !defect.is_zero() {
                return Ok((checked, Some(json!({ "check": "leibniz", "f": element_json(f), "g": element_json(g), "defect": element_json(&defect) }))));
            }
            for h in &ends {
                let defect = associativity_defect(f, g, h)?;
                checked += 1;
                if !defect.is_zero() {
                    return Ok((checked, Some(json!({ "check": "associativity", "f": element_json(f), "g": element_json(g), "h": element_json(h), "defect": element_json(&defect) }))));
                }
            }
        }
    }
    Ok((checked, None))
}

fn bodies_factor(text: &str) -> Result<Report, CliError> {
    let square = parse_square(text)?;
    let factorization = factor_suitable_supersur(&square)?;
    let ok = factorization.certificate.unique;
    Ok(Report { ok, body: json!({ "command": "bodies factor", "square": square, "factorization": factorization }) })
}

fn symm_verify(text: &str, max_u: usize, variant: Variant) -> Result<Report, CliError> {
    let f = parse_map(text)?;
    let options = OperatorOptions { variant, ..Default::default() };
    let report = total_differential_residues(&f, max_u, options, Signs::STANDARD)?;
    Ok(Report { ok: report.holds(), body: json!({ "command": "symm verify", "report": report }) })
}

fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let number = |t: &str| t.parse::<f64>().map_err(|e| CliError::parse("complex number", format!("{text:?}: {e}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(number(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(number(re)?, number(im)?)),
        _ => Err(CliError::parse("complex number", format!("{text:?} is not re or re,im"))),
    }
}

fn mellin_cmd(command: &MellinCommand) -> Result<Report, CliError> {
    match command {
        MellinCommand::Value { profile, s } => {
            let h = profile.profile()?;
            let s = parse_complex(s)?;
            let value = mellin_z(&h, s, profile.n)?;
            Ok(Report {
                ok: value.converged,
                body: json!({ "command": "mellin value", "profile": h, "N": profile.n, "s": [s.re, s.im], "value": value }),
            })
        }
        MellinCommand::FinitePart { profile, m } => {
            let h = profile.profile()?;
            let fp = finite_part(&h, *m, profile.n)?;
            Ok(Report {
                ok: !fp.flagged,
                body: json!({
                    "command": "mellin finite-part",
                    "profile": h,
                    "N": profile.n,
                    "M": m,
                    "value": fp.value,
                    "pole_coefficient": fp.pole_coefficient,
                    "fit_residual": fp.fit_residual,
                    "flagged": fp.flagged,
                }),
            })
        }
        MellinCommand::Verify { profile, m } => {
            let h = profile.profile()?;
            let report = verify_qm_identity(&h, *m, profile.n)?;
            let tolerance = 1e-6;
            let ok = report.residual < tolerance && !report.finite_part.flagged;
            Ok(Report {
                ok,
                body: json!({
                    "command": "mellin verify",
                    "profile": h,
                    "N": profile.n,
                    "M": m,
                    "value": report.finite_part.value,
                    "pole_coefficient": report.finite_part.pole_coefficient,
                    "reference": report.reference,
                    "residual": report.residual,
                    "tolerance": tolerance,
                }),
            })
        }
        MellinCommand::Poles { profile, lo, hi, .. } => {
            let h = profile.profile()?;
            let lo = lo.unwrap_or(-(profile.n as f64) / 2.0 - 4.0);
            let poles = pole_scan(&h, profile.n, lo, *hi)?;
            let ok = poles.iter().all(|p| p.admissible && p.order <= 1);
            Ok(Report {
                ok,
                body: json!({ "command": "mellin poles", "profile": h, "N": profile.n, "lo": lo, "hi": hi, "poles": poles }),
            })
        }
    }
}

fn suite(selected: &[u8]) -> Result<Report, CliError> {
    let ids = if selected.is_empty() { criterion_ids() } else { selected.to_vec() };
    let reports = run_suite(&ids)?;
    let ok = reports.iter().all(|r| r.passed);
    Ok(Report { ok, body: json!({ "command": "suite", "passed": ok, "criteria": reports }) })
}
