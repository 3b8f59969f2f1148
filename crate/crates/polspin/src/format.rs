//! Number formatting shared by the train serializer and CSV output.

/// Shortest decimal form that parses back to the identical `f64`.
///
/// Never more than 17 significant digits; integral values drop the trailing
/// `.0` (`1.0` renders as `1`, `0.25` as `0.25`, `1e300` as `1e300`).
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(stripped) => stripped.to_owned(),
        None => s,
    }
}

pub fn csv_row<I>(fields: I) -> String
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut line = fields.into_iter().fold(String::new(), |mut acc, f| {
        if !acc.is_empty() {
            acc.push(',');
        }
        acc.push_str(f.as_ref());
        acc
    });
    line.push('\n');
    line
}
