use std::fs;

use divzeta::cache::*;
use divzeta::divisor::sieve_divisors;

#[test]
fn round_trip_at_one_million() {
    let dir = tempfile::tempdir().unwrap();
    let (built, outcome) = load_or_build(dir.path(), 1_000_000).unwrap();
    assert_eq!(outcome, CacheOutcome::Built);
    let (loaded, outcome) = load_or_build(dir.path(), 1_000_000).unwrap();
    assert_eq!(outcome, CacheOutcome::Loaded);
    assert_eq!(loaded, built);
    assert_eq!(loaded, sieve_divisors(1_000_000).unwrap());
    assert_eq!(loaded.prefix_sum(1_000_000), built.prefix_sum(1_000_000));
}

#[test]
fn corrupt_byte_triggers_rebuild() {
    let dir = tempfile::tempdir().unwrap();
    load_or_build(dir.path(), 10_000).unwrap();
    let path = cache_path(dir.path());
    let mut bytes = fs::read(&path).unwrap();
    bytes[HEADER_LEN + 1234] ^= 0x01;
    fs::write(&path, &bytes).unwrap();
    assert!(matches!(read_table(&path), Err(divzeta::Error::CorruptCache(_))));
    let (table, outcome) = load_or_build(dir.path(), 10_000).unwrap();
    assert!(matches!(outcome, CacheOutcome::Rebuilt(ref why) if why.contains("checksum")), "{outcome:?}");
    assert_eq!(table, sieve_divisors(10_000).unwrap());
    // the rebuilt file is valid again
    assert_eq!(load_or_build(dir.path(), 10_000).unwrap().1, CacheOutcome::Loaded);
}

#[test]
fn smaller_cache_triggers_rebuild() {
    let dir = tempfile::tempdir().unwrap();
    load_or_build(dir.path(), 1_000).unwrap();
    let (table, outcome) = load_or_build(dir.path(), 5_000).unwrap();
    assert!(matches!(outcome, CacheOutcome::Rebuilt(_)));
    assert_eq!(table.limit(), 5_000);
    assert_eq!(read_table(&cache_path(dir.path())).unwrap().limit(), 5_000);
}

#[test]
fn bad_magic_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = cache_path(dir.path());
    write_table(&path, &sieve_divisors(50).unwrap()).unwrap();
    let mut bytes = fs::read(&path).unwrap();
    bytes[0] = b'X';
    fs::write(&path, &bytes).unwrap();
    assert!(matches!(read_table(&path), Err(divzeta::Error::CorruptCache(_))));
}

#[test]
fn env_var_overrides_cache_dir() {
    std::env::set_var(CACHE_DIR_ENV, "/tmp/divzeta-env-test");
    assert_eq!(default_cache_dir(), std::path::PathBuf::from("/tmp/divzeta-env-test"));
    std::env::remove_var(CACHE_DIR_ENV);
}
