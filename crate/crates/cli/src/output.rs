use std::fs;
use std::io::Write;
use std::path::Path;

use radvert::CurvatureSample;

pub const CSV_HEADER: &str = "t,x,y,r,k,dphi_dn,k_phi,dk_phi_dt";

/// 17 significant digits, `.` decimal point.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv(rows: &[CurvatureSample]) -> String {
    let mut s = String::with_capacity(rows.len() * 200);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let fields = [r.t, r.x, r.y, r.r, r.k, r.dphi_dn, r.k_phi, r.dk_phi_dt];
        let line: Vec<String> = fields.iter().map(|&v| num(v)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

/// Write via a sibling temporary file and rename, so a failed run never
/// leaves a partial file behind. Missing parent directories are created.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}
