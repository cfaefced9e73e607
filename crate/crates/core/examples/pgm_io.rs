//! Reading and writing PGM: binary and ASCII input, binary output.

use rdh::io::{read_pgm, write_pgm};
use rdh::GrayImage;

fn main() -> Result<(), rdh::Error> {
    let ascii = b"P2\n# a 3x2 ramp\n3 2\n15\n0 5 10\n15 10 5\n";
    let img = read_pgm(ascii)?;
    println!("{}x{} pixels={:?}", img.width(), img.height(), img.pixels());

    let bytes = write_pgm(&img);
    println!("binary form: {} bytes, header {:?}", bytes.len(), String::from_utf8_lossy(&bytes[..11]));
    assert_eq!(read_pgm(&bytes)?, img);

    let grad = GrayImage::from_fn(16, 16, |x, y| (x * 16 + y) as u8)?;
    assert_eq!(read_pgm(&write_pgm(&grad))?, grad);

    match read_pgm(b"P5\n4 4\n255\nxx") {
        Err(e) => println!("truncated file: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
