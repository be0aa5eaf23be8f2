//! Runs the bundled corpus against its golden files, as `dltag --mode
//! corpus` does.

use dltag::cli::run_corpus;
use dltag::lexicon::default_lexicon;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let start = std::time::Instant::now();
    let report = run_corpus(&dir, &default_lexicon(), false).expect("corpus directory is readable");
    for f in &report.failures {
        println!("FAIL {f}");
    }
    println!("{} files, {} failures, {:?}", report.checked, report.failures.len(), start.elapsed());
}
