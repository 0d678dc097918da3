#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"

TEST_CASE("sha256 known vectors") {
  CHECK(vtr::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(vtr::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(vtr::sha256_hex("The quick brown fox jumps over the lazy dog") ==
        "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
}

TEST_CASE("sha256 raw digest matches hex") {
  auto raw = vtr::sha256("abc");
  CHECK(raw[0] == 0xba);
  CHECK(raw[1] == 0x78);
  CHECK(raw[31] == 0xad);
}

TEST_CASE("sha256_file_hex hashes file contents") {
  vtr_test::TempDir tmp;
  const std::string content = "hello\nworld\n";
  vtr_test::write_file(tmp.file("data.txt"), content);
  CHECK(vtr::sha256_file_hex(tmp.file("data.txt")) == vtr::sha256_hex(content));
  CHECK_THROWS_AS(vtr::sha256_file_hex(tmp.file("missing.txt")), vtr::Error);
}

TEST_CASE("fnv1a64 known vectors") {
  // offset basis for the empty string
  CHECK(vtr::fnv1a64(std::string{}) == 0xcbf29ce484222325ULL);
  CHECK(vtr::fnv1a64(std::string{"a"}) == 0xaf63dc4c8601ec8cULL);
  CHECK(vtr::fnv1a64(std::string{"foobar"}) == 0x85944171f73967e8ULL);
}

TEST_CASE("fnv1a64 raw-pointer overload agrees with string overload") {
  const std::string s = "hierarchies";
  CHECK(vtr::fnv1a64(s.data(), s.size()) == vtr::fnv1a64(s));
}

TEST_CASE("digests are stable across calls") {
  CHECK(vtr::sha256_hex("determinism") == vtr::sha256_hex("determinism"));
  CHECK(vtr::fnv1a64(std::string{"determinism"}) == vtr::fnv1a64(std::string{"determinism"}));
}
