//! The `triad` command line: parse operands, call the library, render text
//! or JSON. [`run`] is the whole program minus process I/O, so tests drive
//! it directly.

pub mod parse;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use triad::ideals::{self, IdealHandle};
use triad::infinity::{self, PrefixElement};
use triad::iso;
use triad::lie::subalgebra_closure;
use triad::poly_module::{ord_monomial, SeriesEndo};
use triad::weyl::{self, WeylElement};
use triad::{BasisVector, Element, Ordinal, Polynomial, Scalar};

pub use parse::SyntaxError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Domain(#[from] triad::Error),
    /// Operands that parse but do not fit together, such as a `--rank`
    /// below the rank an element needs.
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) => 2,
            CliError::Domain(_) | CliError::Usage(_) => 1,
        }
    }
}

type CResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "triad",
    version,
    about = "Exact computations in the Lie algebras u_n of triangular polynomial derivations"
)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Rank n of u_n. May raise the inferred rank, never lower it.
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Degree window for windowed searches.
    #[arg(long, global = true, default_value_t = 8)]
    window: u32,
    /// Iteration guard for loops that must terminate.
    #[arg(long, global = true, default_value_t = triad::DEFAULT_CAP)]
    cap: usize,
    /// Seed for sampling modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesKind {
    Derived,
    Lower,
    Central,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Lie bracket [u, v].
    Bracket {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Ordinal degree of an element.
    Ord {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// Apply a derivation to a polynomial.
    Act {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// exp(ad u)(v), a finite sum.
    ExpAd {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// The Lie subalgebra generated by some elements.
    Closure {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// The ideal generated by some elements.
    IdealGen {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Whether an element lies in an ideal.
    IdealMember {
        ideal: String,
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// The first basis vectors of an ideal.
    IdealBasis {
        ideal: String,
        #[arg(default_value_t = 10)]
        limit: usize,
    },
    /// Centralizer of an ideal, or every centralizer of u_n when given `un`.
    Centralizer { target: String },
    /// Derived, lower central or central series of u_n.
    Series {
        kind: SeriesKind,
        n: usize,
        /// Index of the central series term.
        lambda: Option<String>,
    },
    /// Whether two factor algebras u_n/I are isomorphic.
    Iso { a: String, b: String },
    /// Uniserial dimension of a factor, of u_n, or of u_oo.
    Udim { target: String },
    /// The homomorphism f_n, its powers, or the kernel of f_n^i.
    FMap {
        #[arg(allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: u64,
        /// Print ker f_n^i for the given i instead (needs --rank).
        #[arg(long)]
        kernel: Option<u64>,
    },
    /// Product in the Weyl algebra.
    WeylMul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether a Weyl element lies in the span of products of chi-images.
    WeylInImage {
        #[arg(allow_hyphen_values = true)]
        a: Option<String>,
        /// Check this many seeded random products instead.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Check the kernel relation for X_{alpha,i} and X_{beta,j}.
    WeylKernelCheck { alpha: String, i: usize, beta: String, j: usize },
    /// Ordinal degree of a monomial in P_n.
    ModOrd { monomial: String },
    /// P', P'' and the summand decomposition of a submodule.
    ModPrime { submodule: String },
    /// Annihilator of a submodule.
    ModAnn { submodule: String },
    /// The endomorphism with restriction sum c_j d_n^j, applied or analysed.
    Endo {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(allow_hyphen_values = true)]
        p: Option<String>,
        /// Only c_0..c_D are known.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Classify an ideal of u_oo, given directly or by a generator.
    InfClassify {
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Whether two factors of u_oo are isomorphic.
    InfIso { a: String, b: String },
    /// Iterates (ad a)^i(b) showing ad a is not locally nilpotent.
    InfWitness {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(&cli) {
        Ok((text, value)) => {
            let mut stdout = if cli.json { value.to_string() } else { text };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { stdout, stderr: String::new(), code: 0 }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

fn compact(o: &Ordinal) -> String {
    o.to_string().replace(' ', "")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

impl Cli {
    /// Applies `--rank` to an inferred rank.
    fn raise(&self, inferred: usize) -> CResult<usize> {
        match self.rank {
            Some(r) if r < inferred => {
                Err(CliError::Usage(format!("--rank {r} is below the inferred rank {inferred}; it may only raise it")))
            }
            Some(r) => Ok(r),
            None => Ok(inferred),
        }
    }

    fn element(&self, text: &str) -> CResult<Element> {
        let u = parse::element(text)?;
        let n = self.raise(u.rank())?;
        Ok(u.with_rank(n)?)
    }

    /// Elements brought to a common rank.
    fn elements(&self, texts: &[&str]) -> CResult<Vec<Element>> {
        let parsed = texts.iter().map(|t| parse::element(t)).collect::<Result<Vec<_>, _>>()?;
        let n = self.raise(parsed.iter().map(Element::rank).max().unwrap_or(1))?;
        Ok(parsed.iter().map(|u| u.with_rank(n)).collect::<Result<_, _>>()?)
    }

    fn ideal(&self, text: &str) -> CResult<IdealHandle> {
        let h = parse::ideal(text)?.handle()?;
        self.check_handle_rank(h.rank)?;
        Ok(h)
    }

    fn check_handle_rank(&self, n: usize) -> CResult<()> {
        match self.rank {
            Some(r) if r != n => Err(CliError::Usage(format!("--rank {r} disagrees with the handle's rank {n}"))),
            _ => Ok(()),
        }
    }
}

type Rendered = (String, Value);

fn dispatch(cli: &Cli) -> CResult<Rendered> {
    match &cli.cmd {
        Cmd::Bracket { u, v } => {
            let e = cli.elements(&[u, v])?;
            let r = e[0].bracket(&e[1])?;
            Ok((r.to_string(), json!({ "result": to_json(&r) })))
        }
        Cmd::Ord { u } => {
            let u = cli.element(u)?;
            let o = u.ord()?;
            let (lead, _) = u.leading_term()?;
            Ok((compact(&o), json!({ "ord": to_json(&o), "leading": lead.to_string(), "rank": u.rank() })))
        }
        Cmd::Act { u, p } => {
            let u = cli.element(u)?;
            let p = parse::polynomial(p)?;
            let r = u.act(&p);
            Ok((r.to_string(), json!({ "result": to_json(&r) })))
        }
        Cmd::ExpAd { u, v } => {
            let e = cli.elements(&[u, v])?;
            let (steps, _) = e[0].ad_power_until_zero(&e[1], cli.cap)?;
            let r = e[0].exp_ad(&e[1], cli.cap)?;
            let text = format!("{r}\nad nilpotent on v after {steps} steps");
            Ok((text, json!({ "result": to_json(&r), "steps": steps })))
        }
        Cmd::Closure { gens } => {
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            let g = cli.elements(&refs)?;
            let s = subalgebra_closure(&g, cli.cap)?;
            let mut text = format!("dimension: {}\nclass: {}\nbasis:", s.dimension, s.nilpotency_class);
            for b in &s.basis {
                write!(text, "\n  {b}").unwrap();
            }
            Ok((text, to_json(&s)))
        }
        Cmd::IdealGen { gens } => {
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            let g = cli.elements(&refs)?;
            let h = ideals::generated_ideal(&g)?;
            Ok((h.to_string(), to_json(&h)))
        }
        Cmd::IdealMember { ideal, u } => {
            let h = cli.ideal(ideal)?;
            let u = parse::element(u)?;
            if u.rank() > h.rank {
                return Err(CliError::Usage(format!("{u} does not lie in u{}", h.rank)));
            }
            let yes = h.contains(&u.with_rank(h.rank)?)?;
            Ok((yes.to_string(), json!({ "member": yes })))
        }
        Cmd::IdealBasis { ideal, limit } => {
            let h = cli.ideal(ideal)?;
            let p = h.basis_prefix(*limit);
            Ok((p.to_string(), to_json(&p)))
        }
        Cmd::Centralizer { target } => centralizer(cli, target),
        Cmd::Series { kind, n, lambda } => series(cli, *kind, *n, lambda.as_deref()),
        Cmd::Iso { a, b } => {
            let (a, b) = (cli.ideal(a)?, cli.ideal(b)?);
            let (sa, sb) = (iso::canonical_signature(&a)?, iso::canonical_signature(&b)?);
            let yes = sa == sb;
            let text = if yes {
                format!("isomorphic: true (signature {sa})")
            } else {
                format!("isomorphic: false (signatures {sa} vs {sb})")
            };
            Ok((text, json!({ "isomorphic": yes, "signatures": [sa.to_string(), sb.to_string()] })))
        }
        Cmd::Udim { target } => {
            let o = if target.trim() == "uoo" { infinity::udim_inf() } else { iso::udim_factor(&cli.ideal(target)?)? };
            Ok((compact(&o), json!({ "udim": to_json(&o) })))
        }
        Cmd::FMap { u, power, kernel } => f_map(cli, u.as_deref(), *power, *kernel),
        Cmd::WeylMul { a, b } => {
            let (a, b) = weyl_pair(cli, a, b)?;
            let r = a.mul(&b)?;
            Ok((r.to_string(), json!({ "result": to_json(&r) })))
        }
        Cmd::WeylInImage { a, sample } => weyl_in_image(cli, a.as_deref(), *sample),
        Cmd::WeylKernelCheck { alpha, i, beta, j } => {
            let (a, b) = (parse::monomial(alpha)?, parse::monomial(beta)?);
            let ok = weyl::kernel_generator_check(&a, *i, &b, *j)?;
            Ok((format!("holds: {ok}"), json!({ "holds": ok })))
        }
        Cmd::ModOrd { monomial } => {
            let m = parse::monomial(monomial)?;
            let n = cli.raise(m.max_index().max(1))?;
            let o = ord_monomial(&m, n)?;
            Ok((compact(&o), json!({ "ord": to_json(&o), "rank": n })))
        }
        Cmd::ModPrime { submodule } => mod_prime(cli, submodule),
        Cmd::ModAnn { submodule } => {
            let s = parse::submodule_handle(submodule)?;
            cli.check_handle_rank(s.rank)?;
            let ann = s.annihilator()?;
            let text = ann.as_ref().map_or_else(|| "faithful".to_string(), ToString::to_string);
            Ok((text, json!({ "annihilator": ann.as_ref().map(to_json) })))
        }
        Cmd::Endo { coeffs, p, order } => endo(cli, coeffs, p.as_deref(), *order),
        Cmd::InfClassify { target } => {
            let t = target.trim_start();
            let (ideal, generator) = if t.starts_with(['W', 'Z', 'U', 'I']) {
                (parse::inf_ideal(t)?, None)
            } else {
                let u = cli.element(t)?;
                (infinity::classify_generated(&u)?, Some(u))
            };
            let (open, closed) = infinity::classify_closed_open(&ideal);
            let text = format!("ideal: {ideal}\nopen: {open}\nclosed: {closed}");
            let mut v = json!({ "ideal": ideal.to_string(), "open": open, "closed": closed });
            if let Some(u) = generator {
                v["generator"] = to_json(&u);
            }
            Ok((text, v))
        }
        Cmd::InfIso { a, b } => {
            let (a, b) = (parse::inf_ideal(a)?, parse::inf_ideal(b)?);
            let yes = infinity::iso_factors_inf(&a, &b)?;
            Ok((format!("isomorphic: {yes}"), json!({ "isomorphic": yes })))
        }
        Cmd::InfWitness { u, steps } => {
            let a = PrefixElement::from_element(&cli.element(u)?);
            let w = infinity::non_nilpotence_witness(&a, *steps)?;
            let mut text = String::new();
            for (i, p) in w.iter().enumerate() {
                if i > 0 {
                    text.push('\n');
                }
                write!(text, "step {}: {p}", i + 1).unwrap();
            }
            let items: Vec<Value> = w.iter().map(prefix_json).collect();
            Ok((text, json!({ "iterates": items })))
        }
    }
}

fn prefix_json(p: &PrefixElement) -> Value {
    let comps: serde_json::Map<String, Value> =
        p.components().map(|(i, q)| (i.to_string(), Value::String(q.to_string()))).collect();
    let tail = match p.tail() {
        infinity::TailKind::ZeroTail => "zero",
        infinity::TailKind::UnknownTail => "unknown",
    };
    json!({ "components": comps, "known_to": p.known_to(), "tail": tail })
}

fn centralizer(cli: &Cli, target: &str) -> CResult<Rendered> {
    let t = target.trim();
    let bare = t.strip_prefix('u').is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()));
    if bare {
        let n = parse::ideal(t)?.rank;
        cli.check_handle_rank(n)?;
        let set = ideals::centralizer_set(n)?;
        let text = format!(
            "{} centralizers\n{}",
            set.len(),
            set.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
        );
        return Ok((text, json!({ "count": set.len(), "centralizers": to_json(&set) })));
    }
    let h = cli.ideal(t)?;
    let c = h.centralizer()?;
    Ok((c.to_string(), json!({ "centralizer": to_json(&c) })))
}

fn series(cli: &Cli, kind: SeriesKind, n: usize, lambda: Option<&str>) -> CResult<Rendered> {
    cli.check_handle_rank(n)?;
    if lambda.is_some() && !matches!(kind, SeriesKind::Central) {
        return Err(CliError::Usage("only the central series takes an index".into()));
    }
    match kind {
        SeriesKind::Derived => {
            let s = ideals::derived_series(n)?;
            let lines: Vec<String> = s.iter().enumerate().map(|(i, h)| format!("G({i}) = {h}")).collect();
            Ok((lines.join("\n"), json!({ "terms": to_json(&s) })))
        }
        SeriesKind::Lower => {
            let s = ideals::lower_central_series(n)?;
            let text = format!("G1 = {}\nGk = {} for k >= {}", s.first, s.stable, s.stabilizes_at + 1);
            Ok((text, to_json(&s)))
        }
        SeriesKind::Central => {
            let Some(l) = lambda else {
                return Err(CliError::Usage("the central series needs an index".into()));
            };
            let l = parse::ordinal(l)?;
            let h = ideals::central_series_term(n, &l)?;
            Ok((format!("Z({}) = {h}", compact(&l)), json!({ "index": to_json(&l), "term": to_json(&h) })))
        }
    }
}

fn f_map(cli: &Cli, u: Option<&str>, power: u64, kernel: Option<u64>) -> CResult<Rendered> {
    match (u, kernel) {
        (None, Some(i)) => {
            let Some(n) = cli.rank else {
                return Err(CliError::Usage("--kernel needs --rank".into()));
            };
            let h = iso::f_power_kernel(n, i)?;
            Ok((h.to_string(), json!({ "kernel": to_json(&h) })))
        }
        (Some(u), None) => {
            let mut r = cli.element(u)?;
            for _ in 0..power {
                r = iso::f_map(&r)?;
            }
            Ok((r.to_string(), json!({ "result": to_json(&r), "power": power })))
        }
        _ => Err(CliError::Usage("give either an element or --kernel".into())),
    }
}

fn weyl_pair(cli: &Cli, a: &str, b: &str) -> CResult<(WeylElement, WeylElement)> {
    let (a, b) = (parse::weyl(a, None)?, parse::weyl(b, None)?);
    let n = cli.raise(a.rank().max(b.rank()))?;
    Ok((a.with_rank(n)?, b.with_rank(n)?))
}

fn random_element(r: &mut ChaCha8Rng, n: usize) -> Element {
    let basis = BasisVector::enumerate(n, 2);
    let terms: Vec<(BasisVector, Scalar)> = (0..r.gen_range(1..=3))
        .map(|_| (basis[r.gen_range(0..basis.len())].clone(), Scalar::from_integer(r.gen_range(-3i64..=3).into())))
        .collect();
    Element::from_terms(n, terms).expect("enumerated within rank")
}

fn weyl_in_image(cli: &Cli, a: Option<&str>, sample: Option<usize>) -> CResult<Rendered> {
    match (a, sample) {
        (Some(a), None) => {
            let a = parse::weyl(a, None)?;
            let a = a.with_rank(cli.raise(a.rank())?)?;
            let yes = weyl::in_wn_span(&a);
            let mut text = format!("in image: {yes}");
            let mut v = json!({ "in_image": yes });
            if yes {
                let coords = weyl::express_in_wprime(&a, cli.window)?
                    .ok_or_else(|| CliError::Usage("no W' coordinates found inside the window".into()))?;
                let parts: Vec<String> = coords.iter().map(|(w, c)| format!("{c} * {w}")).collect();
                write!(text, "\ncoordinates: {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
                    .unwrap();
                v["coordinates"] =
                    coords.iter().map(|(w, c)| json!({ "element": w.to_string(), "coeff": c.to_string() })).collect();
            }
            Ok((text, v))
        }
        (None, Some(count)) => {
            let n = cli.rank.unwrap_or(3);
            if n < 1 {
                return Err(CliError::Usage("rank must be at least 1".into()));
            }
            let mut r = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut fails = Vec::new();
            for k in 0..count {
                let mut p = WeylElement::one(n);
                for _ in 0..r.gen_range(1..=3) {
                    p = p.mul(&weyl::chi(&random_element(&mut r, n)))?;
                }
                if !weyl::in_wn_span(&p) {
                    fails.push(k);
                }
            }
            let text =
                format!("sampled {count} products in u{n} with seed {}: {} outside the image", cli.seed, fails.len());
            Ok((text, json!({ "sampled": count, "rank": n, "seed": cli.seed, "outside": fails })))
        }
        _ => Err(CliError::Usage("give either a Weyl element or --sample".into())),
    }
}

fn mod_prime(cli: &Cli, text: &str) -> CResult<Rendered> {
    let s = parse::submodule_handle(text)?;
    cli.check_handle_rank(s.rank)?;
    let parts = s.summands();
    if s.is_whole() {
        return Ok((format!("summands: {parts}"), json!({ "summands": parts.to_string() })));
    }
    let (thetas, dim) = s.p_prime()?;
    let (witness, next) = s.p_doubleprime()?;
    let th: Vec<String> = thetas.iter().map(ToString::to_string).collect();
    let text = format!(
        "P' thetas: {}\ndim P'/P: {dim}\nP'' witness: {witness}\nP'' = {next}\nsummands: {parts}",
        th.join(", ")
    );
    let v = json!({
        "thetas": th,
        "prime_dim": dim,
        "doubleprime_witness": witness.to_string(),
        "doubleprime": to_json(&next),
        "summands": parts.to_string(),
    });
    Ok((text, v))
}

fn endo(cli: &Cli, coeffs: &str, p: Option<&str>, order: Option<u32>) -> CResult<Rendered> {
    let c = parse::scalars(coeffs)?;
    let p = p.map(parse::polynomial).transpose()?;
    let inferred = p.as_ref().map_or(1, |p| p.max_var().max(1));
    let n = cli.raise(inferred)?;
    let phi = SeriesEndo::new(n, c, order)?;
    if let Some(p) = p {
        let r: Polynomial = phi.apply(&p)?;
        return Ok((r.to_string(), json!({ "result": to_json(&r) })));
    }
    let auto = phi.is_automorphism();
    let k = phi.kernel()?;
    let text = format!("kernel: {k}\nautomorphism: {auto}");
    Ok((text, json!({ "kernel": k.to_string(), "kernel_index": k.d, "automorphism": auto })))
}
