use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use merobound_cli::{execute, manifest_path, parse, Failure, EXIT_USAGE};

fn configure_threads() -> Result<Option<usize>, Failure> {
    let Ok(raw) = std::env::var("MEROBOUND_THREADS") else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::Usage(format!("MEROBOUND_THREADS must be a positive integer (got `{raw}`)")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Some(n))
}

fn run(cli: &merobound_cli::args::Cli) -> Result<u8, Failure> {
    let threads = configure_threads()?;
    let done = execute(cli, threads)?;
    match &cli.out {
        Some(path) => {
            fs::write(path, &done.text).map_err(|e| Failure::Io(path.clone(), e))?;
            let mpath = manifest_path(path);
            let pretty: serde_json::Value = serde_json::from_str(&done.manifest).expect("valid manifest");
            let mut text = serde_json::to_string_pretty(&pretty).expect("serializable");
            text.push('\n');
            fs::write(&mpath, text).map_err(|e| Failure::Io(mpath, e))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(done.text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))?;
            eprintln!("manifest: {}", done.manifest);
        }
    }
    Ok(done.status)
}

fn main() -> ExitCode {
    let cli = match parse(std::env::args_os()) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}
