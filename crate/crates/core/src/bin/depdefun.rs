use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use depdefun::dcc;
use depdefun::defun::defun_program;
use depdefun::harness::{self, enumerate_small_terms, Report};
use depdefun::kernel::Checker;
use depdefun::refun::refun_checked;
use depdefun::surface::emit::{to_json_string, to_text};
use depdefun::surface::{load_cc, load_dcc, print_cc, print_dcc, LoadError};

#[derive(Parser)]
#[command(name = "depdefun", version, about = "Defunctionalization for the Calculus of Constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type check a .cc file and print the type of each definition and of main.
    Check { file: PathBuf },
    /// Translate a .cc file to DCC.
    Defun {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Type check a .dcc file.
    Checkdcc { file: PathBuf },
    /// Normalize the main term.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Cc)]
        target: Target,
    },
    /// Translate a .dcc file back to CC.
    Refun { file: PathBuf },
    /// Run the metatheory checks on a .cc file or every .cc file in a directory.
    Verify {
        path: PathBuf,
        /// Also check every well-typed term up to this size.
        #[arg(long)]
        enumerate: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Cc,
    Dcc,
}

/// A diagnostic and the exit code it maps to.
struct Fail(u8, String);

impl From<LoadError> for Fail {
    fn from(e: LoadError) -> Self {
        Fail(e.exit_code() as u8, e.to_string())
    }
}

impl From<depdefun::TypeError> for Fail {
    fn from(e: depdefun::TypeError) -> Self {
        Fail(1, format!("type error: {e}"))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn main_term<T>(main: Option<T>, file: &Path) -> Result<T, Fail> {
    main.ok_or_else(|| Fail(2, format!("{}: no `main` declaration", file.display())))
}

fn run(cmd: Command) -> Result<(), Fail> {
    match cmd {
        Command::Check { file } => {
            let prog = load_cc(&file)?;
            for (x, t, _) in &prog.defs {
                println!("{x} : {}", print_cc(t));
            }
            if let Some(m) = &prog.main {
                let d = Checker::cc().infer(&prog.ctx, m)?;
                println!("main : {}", print_cc(&d.ty));
            }
            Ok(())
        }
        Command::Defun { file, emit, out } => {
            let prog = load_cc(&file)?;
            let m = main_term(prog.main, &file)?;
            let r = defun_program(&prog.ctx, &m)?;
            let defs = r.all_defs()?;
            let text = match emit {
                Emit::Text => to_text(&defs, &r.dcc_ctx, &r.term, &r.ty),
                Emit::Json => to_json_string(&defs, &r.dcc_ctx, &r.term, &r.ty) + "\n",
            };
            match out {
                Some(p) => fs::write(&p, text).map_err(|e| Fail(2, format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Checkdcc { file } => {
            let prog = load_dcc(&file)?;
            dcc::wf(&prog.labels, &prog.ctx)?;
            println!("{} labels, {} context entries well formed", prog.labels.len(), prog.ctx.len());
            if let Some(m) = &prog.main {
                let ty = dcc::check::DccChecker::new(&prog.labels).infer(&prog.ctx, m)?;
                println!("main : {}", print_dcc(&ty));
            }
            Ok(())
        }
        Command::Eval { file, target } => {
            if file.extension().is_some_and(|e| e == "dcc") {
                let prog = load_dcc(&file)?;
                let m = main_term(prog.main, &file)?;
                dcc::infer(&prog.labels, &prog.ctx, &m)?;
                println!("{}", print_dcc(&*dcc::normalize(&prog.labels, &m)?));
                return Ok(());
            }
            let prog = load_cc(&file)?;
            let m = main_term(prog.main, &file)?;
            let checker = Checker::cc();
            checker.infer(&prog.ctx, &m)?;
            match target {
                Target::Cc => println!("{}", print_cc(&*checker.normalize(&m)?)),
                Target::Dcc => {
                    let r = defun_program(&prog.ctx, &m)?;
                    let defs = r.all_defs()?;
                    println!("{}", print_dcc(&*dcc::normalize(&defs, &r.term)?));
                }
            }
            Ok(())
        }
        Command::Refun { file } => {
            let prog = load_dcc(&file)?;
            let m = main_term(prog.main, &file)?;
            let (ctx, t, ty) = refun_checked(&prog.labels, &prog.ctx, &m)?;
            for (x, a) in ctx.entries() {
                println!("axiom {x} : {};", print_cc(a));
            }
            println!("main {};", print_cc(&t));
            println!("-- : {}", print_cc(&ty));
            Ok(())
        }
        Command::Verify { path, enumerate } => verify(&path, enumerate),
    }
}

fn cc_files(path: &Path) -> Result<Vec<PathBuf>, Fail> {
    if !path.is_dir() {
        return Ok(vec![path.to_owned()]);
    }
    let entries = fs::read_dir(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "cc"))
        .collect();
    files.sort();
    Ok(files)
}

fn verify(path: &Path, enumerate: Option<usize>) -> Result<(), Fail> {
    let files = cc_files(path)?;
    // Files are independent; check them on separate threads and report in order.
    let results: Vec<Result<Report, LoadError>> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| {
                s.spawn(move || {
                    let prog = load_cc(f)?;
                    let name = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    Ok(harness::verify_program(&name, &prog))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    });
    let mut load_error: Option<Fail> = None;
    let mut failed = false;
    for (f, r) in files.iter().zip(results) {
        match r {
            Ok(rep) => {
                print!("{rep}");
                failed |= !rep.passed();
            }
            Err(e) => {
                eprintln!("error: {}: {e}", f.display());
                load_error.get_or_insert(Fail::from(e));
            }
        }
    }
    if let Some(budget) = enumerate {
        if budget > harness::MAX_BUDGET {
            return Err(Fail(2, format!("size budget {budget} exceeds {}", harness::MAX_BUDGET)));
        }
        let terms = enumerate_small_terms(budget);
        let mut bad = 0;
        for (i, (ctx, m)) in terms.iter().enumerate() {
            let rep = harness::verify_judgement(&format!("enum#{i}"), ctx, m);
            for l in rep.failures() {
                println!("{l}");
                bad += 1;
            }
        }
        println!("{} enumerated judgements up to size {budget}, {bad} failures", terms.len());
        failed |= bad > 0;
    }
    if let Some(f) = load_error {
        return Err(f);
    }
    if failed {
        return Err(Fail(3, "verification failed".into()));
    }
    Ok(())
}
