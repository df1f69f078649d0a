//! Subcommand dispatch. Results go to `out`, diagnostics to `err`.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use iwahori_core::lang::solve_lang;
use iwahori_core::lattice::Q;
use iwahori_core::{AffineElt, Budget, CochVec, Field, Pi1Element, Reducer, RootDatum, SigmaClass, StrataTable};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::datum::load_datum;
use crate::error::{CliError, CliResult, ParseError};
use crate::expr::parse_element;
use crate::format::{nu_strings, parse_q, q_str, write_table_csv, CertificateJson, ClassJson, TableJson};
use crate::plot::{plot_apartment, PlotSpec};
use crate::series::{parse_matrix, parse_vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "iwahori", version, about = "Newton strata of Iwahori double cosets")]
pub struct Cli {
    /// GL:n, SL:n, SP:2n or file:PATH (root-datum JSON)
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// id or perm:i,j,... (simple indices from 1)
    #[arg(long, global = true)]
    pub delta: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Node limit for searches
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: u64,
    /// Shuffles the generator order of the reduction (replay of randomized runs)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Length l(x)
    Len { x: String },
    /// eta(x) and its length
    Eta { x: String },
    /// Newton point of x
    Newton { x: String },
    /// Kottwitz point of x
    Kappa { x: String },
    /// The class [x]
    Class { x: String },
    /// Defect of the class [x]
    Defect { x: String },
    /// not_shrunken, shrunken or regular_shrunken
    Shrunken { x: String },
    /// A minimal (J, w, delta)-alcove certificate, or test a given pair
    AlcoveFind {
        x: String,
        /// every certificate with inclusion-minimal J
        #[arg(long)]
        all: bool,
        /// test this J (e.g. 1,3) instead of searching
        #[arg(long)]
        j: Option<String>,
        /// finite Weyl element for --j, as an expression
        #[arg(long, default_value = "1")]
        w: String,
    },
    /// Minimal class of B(G)_x
    MinimalNewton { x: String },
    /// Virtual dimension d_x(b)
    Vdim {
        x: String,
        /// b as the class of this element
        #[arg(long)]
        of: Option<String>,
        /// b by Newton point, e.g. 1/2,1/2
        #[arg(long)]
        nu: Option<String>,
        /// Kottwitz point for --nu (defaults to that of x)
        #[arg(long)]
        kappa: Option<String>,
    },
    /// B(G)_x with dimensions
    Bgx { x: String },
    /// Full strata table of x
    Table { x: String },
    /// Elements with a gap in B(G)_x
    GapSearch {
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        free_range: i64,
        /// worker threads (0: available parallelism)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Solve w - M sigma(w) = v over F_{p^k}[[t]] mod t^N
    LangSolve {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// sigma raises coefficients to the q-th power
        #[arg(long)]
        q: u64,
        /// precision N
        #[arg(long)]
        prec: usize,
        /// rows separated by ';', entries by ','
        #[arg(long)]
        matrix: String,
        /// entries separated by ','
        #[arg(long)]
        vector: String,
    },
    /// SVG picture of the apartment (semisimple rank <= 2)
    Plot {
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long)]
        highlight: Vec<String>,
        #[arg(long)]
        shrunken: bool,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn datum(&self) -> CliResult<RootDatum> {
        let group = self.cli.group.as_deref().ok_or_else(|| CliError::Datum("--group is required".into()))?;
        load_datum(group, self.cli.delta.as_deref())
    }

    fn budget(&self) -> Budget {
        Budget { max_nodes: self.cli.budget }
    }

    fn reducer<'r>(&self, rd: &'r RootDatum) -> Reducer<'r> {
        make_reducer(rd, self.budget(), self.cli.seed)
    }

    fn json(&mut self, v: &Value) -> CliResult<()> {
        writeln!(self.out, "{}", serde_json::to_string(v)?)?;
        Ok(())
    }

    /// JSON value, or a CSV table.
    fn emit(&mut self, v: Value, header: &[&str], rows: Vec<Vec<String>>) -> CliResult<()> {
        match self.cli.format {
            Format::Json => self.json(&v),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *self.out);
                w.write_record(header)?;
                for r in rows {
                    w.write_record(r)?;
                }
                w.flush()?;
                Ok(())
            }
        }
    }

    fn scalar(&mut self, name: &str, v: Value) -> CliResult<()> {
        let cell = match &v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        self.emit(v, &[name], vec![vec![cell]])
    }
}

fn make_reducer(rd: &RootDatum, budget: Budget, seed: Option<u64>) -> Reducer<'_> {
    let r = Reducer::new(rd, budget);
    match seed {
        None => r,
        Some(s) => {
            let mut order: Vec<usize> = (0..rd.affine_generators().len()).collect();
            order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(s));
            r.with_order(order)
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn class_cells(b: &SigmaClass) -> Vec<String> {
    vec![join(&nu_strings(&b.nu)), join(&b.kappa.0)]
}

fn class_json(b: &SigmaClass) -> Value {
    serde_json::to_value(ClassJson::from_class(b)).expect("serializable")
}

fn parse_index_list(text: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    let mut off = 0;
    for part in text.split(',') {
        let t = part.trim();
        if !t.is_empty() {
            let i: usize = t.parse().map_err(|_| ParseError::new(off, format!("bad index {t:?}")))?;
            if i == 0 {
                return Err(ParseError::new(off, "simple indices start at 1").into());
            }
            out.push(i - 1);
        }
        off += part.len() + 1;
    }
    Ok(out)
}

fn parse_ints(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| ParseError::new(0, format!("bad integer {s:?}")).into()))
        .collect()
}

/// `b` for `vdim`, checked against `x`.
fn vdim_class(rd: &RootDatum, x: &AffineElt, of: Option<&str>, nu: Option<&str>, kappa: Option<&str>) -> CliResult<SigmaClass> {
    let b = match (of, nu) {
        (Some(y), None) => rd.class_of(&parse_element(rd, y)?),
        (None, Some(nu)) => {
            let nu = CochVec(nu.split(',').map(parse_q).collect::<Result<Vec<Q>, _>>()?);
            if nu.dim() != rd.ambient_rank() {
                return Err(CliError::Semantic(format!("Newton point needs {} entries", rd.ambient_rank())));
            }
            if !rd.is_dominant(&nu) {
                return Err(CliError::Semantic(format!("{nu} is not dominant")));
            }
            let k = match kappa {
                Some(k) => rd.pi1().normalize(&Pi1Element(parse_ints(k)?)),
                None => rd.kappa(x),
            };
            let b = SigmaClass { nu, kappa: k, level: Default::default(), rep: None };
            rd.straight_rep(&b)?;
            b
        }
        _ => return Err(CliError::Semantic("vdim needs exactly one of --of and --nu".into())),
    };
    if b.kappa != rd.kappa(x) {
        return Err(CliError::Semantic(format!("kappa mismatch: b has {}, x has {}", b.kappa, rd.kappa(x))));
    }
    Ok(b)
}

fn gap_tables(rd: &RootDatum, budget: Budget, seed: Option<u64>, max_len: usize, free_range: i64, jobs: usize) -> CliResult<Vec<StrataTable>> {
    let xs = rd.sweep_elements(max_len, free_range, budget)?;
    let jobs = if jobs == 0 { std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1) } else { jobs };
    let chunk = xs.len().div_ceil(jobs.max(1)).max(1);
    let results: Vec<iwahori_core::Result<Vec<StrataTable>>> = std::thread::scope(|s| {
        let handles: Vec<_> = xs
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    let mut red = make_reducer(rd, budget, seed);
                    let mut found = Vec::new();
                    for x in part {
                        let t = red.strata_table(x)?;
                        if !t.saturated {
                            found.push(t);
                        }
                    }
                    Ok(found)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn dispatch(ctx: &mut Ctx<'_>) -> CliResult<()> {
    let cli = ctx.cli;
    match &cli.command {
        Command::LangSolve { p, k, q, prec, matrix, vector } => {
            let field = Field::new(*p, *k)?;
            let m = parse_matrix(&field, matrix, *prec)?;
            let v = parse_vector(&field, vector, *prec)?;
            let w = solve_lang(&field, *q, &m, &v, *prec)?;
            let strs: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            let rows = strs.iter().enumerate().map(|(i, s)| vec![(i + 1).to_string(), s.clone()]).collect();
            return ctx.emit(json!({ "w": strs, "precision": prec }), &["index", "series"], rows);
        }
        Command::GapSearch { max_len, free_range, jobs } => {
            let rd = ctx.datum()?;
            let tables = gap_tables(&rd, ctx.budget(), cli.seed, *max_len, *free_range, *jobs)?;
            let v: Vec<Value> = tables
                .iter()
                .map(|t| serde_json::to_value(TableJson::new(&rd, t)).expect("serializable"))
                .collect();
            let mut rows = Vec::new();
            for t in &tables {
                for g in &t.gaps {
                    let mut r = vec![rd.format_elt(&t.x), t.length.to_string()];
                    r.extend(class_cells(g));
                    rows.push(r);
                }
            }
            return ctx.emit(Value::Array(v), &["x", "length", "gap_nu", "gap_kappa"], rows);
        }
        _ => {}
    }

    let rd = ctx.datum()?;
    let parse = |x: &str| parse_element(&rd, x);
    match &cli.command {
        Command::Len { x } => {
            let l = rd.length(&parse(x)?);
            ctx.scalar("length", json!(l))
        }
        Command::Eta { x } => {
            let e = rd.eta(&parse(x)?);
            let (w, l) = (rd.format_weyl(e), rd.weyl().length(e));
            ctx.emit(json!({ "eta": w, "length": l }), &["eta", "length"], vec![vec![w.clone(), l.to_string()]])
        }
        Command::Newton { x } => {
            let nu = nu_strings(&rd.newton_point(&parse(x)?));
            ctx.emit(json!(nu), &["nu"], vec![vec![join(&nu)]])
        }
        Command::Kappa { x } => {
            let k = rd.kappa(&parse(x)?).0;
            ctx.emit(json!(k), &["kappa"], vec![vec![join(&k)]])
        }
        Command::Class { x } | Command::MinimalNewton { x } => {
            let y = parse(x)?;
            let b = match &cli.command {
                Command::Class { .. } => rd.class_of(&y),
                _ => rd.minimal_newton(&y)?,
            };
            ctx.emit(class_json(&b), &["nu", "kappa"], vec![class_cells(&b)])
        }
        Command::Defect { x } => {
            let d = rd.defect(&rd.class_of(&parse(x)?))?;
            ctx.scalar("defect", json!(d))
        }
        Command::Shrunken { x } => {
            let s = rd.shrunken_status(&parse(x)?);
            ctx.scalar("status", json!(s.as_str()))
        }
        Command::AlcoveFind { x, all, j, w } => {
            let y = parse(x)?;
            let header = ["J", "w", "normalized", "tilde_x"];
            let cells = |c: &CertificateJson| {
                vec![join(&c.j), c.w.clone(), c.normalized.to_string(), c.tilde_x.clone()]
            };
            if let Some(j) = j {
                let j = parse_index_list(j)?;
                let wv = parse(w)?;
                if wv.lambda.iter().any(|&c| c != 0) {
                    return Err(CliError::Semantic("--w must be a finite Weyl element".into()));
                }
                let ok = rd.is_alcove_element(&y, &j, wv.v)?;
                let cert = if ok { Some(CertificateJson::new(&rd, &rd.normalize(&y, &j, wv.v)?)) } else { None };
                let rows = cert.iter().map(cells).collect();
                return ctx.emit(json!({ "alcove": ok, "certificate": cert }), &header, rows);
            }
            let certs: Vec<CertificateJson> = if *all {
                rd.all_minimal_pairs(&y).iter().map(|c| CertificateJson::new(&rd, c)).collect()
            } else {
                vec![CertificateJson::new(&rd, &rd.find_minimal_pair(&y))]
            };
            let rows = certs.iter().map(cells).collect();
            let v = if *all { json!(certs) } else { json!(certs[0]) };
            ctx.emit(v, &header, rows)
        }
        Command::Vdim { x, of, nu, kappa } => {
            let y = parse(x)?;
            let b = vdim_class(&rd, &y, of.as_deref(), nu.as_deref(), kappa.as_deref())?;
            let d = q_str(&rd.virtual_dimension(&y, &b)?);
            ctx.scalar("vdim", json!(d))
        }
        Command::Bgx { x } => {
            let y = parse(x)?;
            let res = ctx.reducer(&rd).reduce(&y)?;
            // BTreeMap order: (nu, kappa)
            let mut v = Vec::new();
            let mut rows = Vec::new();
            for (b, d) in &res.classes {
                let mut j = class_json(b);
                j["dim"] = json!(d);
                v.push(j);
                let mut r = class_cells(b);
                r.push(d.to_string());
                rows.push(r);
            }
            ctx.emit(Value::Array(v), &["class_nu", "class_kappa", "dim"], rows)
        }
        Command::Table { x } => {
            let y = parse(x)?;
            let t = TableJson::new(&rd, &ctx.reducer(&rd).strata_table(&y)?);
            match cli.format {
                Format::Json => ctx.json(&serde_json::to_value(&t)?),
                Format::Csv => write_table_csv(&mut *ctx.out, &t),
            }
        }
        Command::Plot { radius, highlight, shrunken } => {
            let highlights = highlight.iter().map(|h| parse(h)).collect::<CliResult<Vec<_>>>()?;
            let svg = plot_apartment(&rd, &PlotSpec { radius: *radius, highlights, shade_shrunken: *shrunken })?;
            ctx.out.write_all(svg.as_bytes())?;
            Ok(())
        }
        Command::LangSolve { .. } | Command::GapSearch { .. } => unreachable!("handled above"),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let mut ctx = Ctx { cli: &cli, out };
    match dispatch(&mut ctx) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
