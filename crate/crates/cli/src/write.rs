use std::io::Write as _;
use std::path::Path;

use tempfile::NamedTempFile;

/// Write `contents` to a temporary file beside `path`, then rename.
pub fn atomic_write(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Either write to `path` or print to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> std::io::Result<()> {
    match path {
        Some(p) => atomic_write(p, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()
        }
    }
}

/// Scatter plot of every level column against `g`.
pub fn spectrum_script(csv_name: &str, columns: usize, title: &str, yrange: (f64, f64)) -> String {
    format!(
        "set datafile separator ','\n\
         set key off\n\
         set title '{title}'\n\
         set xlabel 'g/ω'\n\
         set ylabel 'E/ω'\n\
         set yrange [{}:{}]\n\
         plot for [i=2:{}] '{csv_name}' every ::1 using 1:i with points pt 7 ps 0.3 lc rgb 'black'\n",
        yrange.0,
        yrange.1,
        columns + 1,
    )
}

pub fn populations_script(csv_name: &str, title: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set key off\n\
         set title '{title}'\n\
         set xlabel 'n'\n\
         set ylabel 'P(n)'\n\
         set style fill solid 0.6\n\
         set boxwidth 0.8\n\
         plot '{csv_name}' every ::1 using 1:2 with boxes\n"
    )
}
