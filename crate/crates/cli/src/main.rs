use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(k) = std::env::var("PERMSPLIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    let out = permsplit_cli::run(std::env::args_os());
    let result = if !out.stderr {
        std::io::stdout().write_all(out.text.as_bytes())
    } else {
        std::io::stderr().write_all(out.text.as_bytes())
    };
    if result.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(out.code as u8)
}
