//! The `ncg v1` text format and the ownership-string ids used in CSVs.

use ncg::format::{ownership_string, parse_ownership_string, parse_profile, serialize_profile};

pub fn main() -> ncg::Result<()> {
    let text = "ncg v1\nn 3\nalpha 19/2\nbuy 0 1\nbuy 2 1\n";
    let (config, profile) = parse_profile(text)?;
    println!("alpha {} id {}", config.alpha(), ownership_string(&profile));
    assert_eq!(serialize_profile(&config, &profile), text);
    assert_eq!(parse_ownership_string(&ownership_string(&profile)), Some(profile));

    let err = parse_profile("ncg v1\nn 3\nalpha 1\nbuy 0 0\n").unwrap_err();
    println!("rejected: {err}");
    Ok(())
}
