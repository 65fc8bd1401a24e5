#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qfzeta/conjugacy.hpp"
#include "qfzeta/enumeration.hpp"
#include "qfzeta/errors.hpp"
#include "support.hpp"

using namespace qfzeta;
using qfzeta::test::load;

namespace {

std::string parse_code(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_group(in, "t.grp");
  } catch (const Error& e) {
    return e.code() + " " + e.what();
  }
  return "ok";
}

Word random_word(std::mt19937_64& rng, std::size_t letters, std::size_t len) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(letters) - 1);
  Word w(len);
  for (auto& x : w) x = static_cast<Letter>(pick(rng));
  return free_reduce(w);
}

}  // namespace

TEST_CASE("group files parse and round trip") {
  for (const char* name : {"cyclic.grp", "schottky.grp", "schottky-complex.grp", "octagon.grp", "octagon-bent.grp"}) {
    const GroupDefinition g = load(name);
    std::istringstream again(format_group(g));
    const GroupDefinition h = parse_group(again);
    REQUIRE(h.generator_count() == g.generator_count());
    CHECK(h.kind() == g.kind());
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
      CHECK(h.generators()[i].name == g.generators()[i].name);
      CHECK(h.generators()[i].map.distance(g.generators()[i].map) == 0.0);
    }
  }
}

TEST_CASE("malformed group files report the line") {
  CHECK(parse_code("gen a = (1,0 0,0 0,0 1,0)\n").rfind("moebius.ParseError t.grp:", 0) == 0);
  CHECK(parse_code("type free 1\ngen a = (2,0 0,0 0,0)\n").find("t.grp:2:") != std::string::npos);
  CHECK(parse_code("type free 1\ngen a = (2,0 0,0 0,0 x,0)\n").find("bad complex entry") != std::string::npos);
  CHECK(parse_code("type free 1\ngen a = (2,0 0,0 0,0 0.5,0)\ngen a = (2,0 0,0 0,0 0.5,0)\n").find("duplicate") !=
        std::string::npos);
  CHECK(parse_code("type torus 1\n").find("unknown group type") != std::string::npos);
  CHECK(parse_code("type surface 0\n").find("out of range") != std::string::npos);
  CHECK(parse_code("type free 1\nfrobnicate\n").find("unknown keyword") != std::string::npos);
  CHECK(parse_code("# trivial\ntype free 0\n") == "ok");
}

TEST_CASE("surface relator and marking") {
  const GroupDefinition g = load("octagon.grp");
  CHECK(g.genus() == 2);
  CHECK(g.relator_value().is_identity(1e-12));
  CHECK(g.is_real());
  CHECK(!load("octagon-bent.grp").is_real());
  load("octagon-bent.grp").validate();
  // A broken relator is rejected.
  std::vector<NamedGenerator> gens = g.generators();
  gens[1].map = gens[1].map * gens[2].map;
  const GroupDefinition bad(GroupKind::surface, 2, gens, g.marking());
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("conjugation by a Moebius map and normalisation") {
  const GroupDefinition g = load("octagon.grp");
  const MoebiusMap h({1.0, 0.0}, {0.3, 0.2}, {0.0, 0.15}, {1.0, 0.0});
  const GroupDefinition moved = g.conjugated_by(h);
  CHECK(!moved.is_real());
  moved.validate();
  const Normalization a = normalize_marked_group(g), b = normalize_marked_group(moved);
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    CHECK(a.group.generators()[i].map.distance(b.group.generators()[i].map) < 1e-9);
  }
  CHECK(a.group.is_real(1e-9));
  const GroupDefinition bar = conjugate_group(moved);
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    CHECK(bar.generators()[i].map.distance(moved.generators()[i].map.conj()) == 0.0);
  }
}

TEST_CASE("word utilities") {
  const GroupDefinition g = load("schottky.grp");
  const Letter a = make_letter(0, false), A = make_letter(0, true), b = make_letter(1, false);
  CHECK(free_reduce({a, b, inverse_letter(b), A, a}) == Word{a});
  CHECK(is_cyclically_reduced({a, b}));
  CHECK(!is_cyclically_reduced({a, b, A}));
  CHECK(cyclically_reduce({A, b, b, a}) == Word{b, b});
  CHECK(least_rotation({b, a, a}) == Word{a, a, b});
  CHECK(primitive_period({a, b, a, b}) == 2);
  CHECK(primitive_period({a, b, b}) == 3);
  CHECK(parse_word(format_word({a, A, b}, g), g) == Word{a, A, b});
  CHECK(format_word({}, g) == "e");
  CHECK_THROWS_AS(parse_word("a q", g), Error);
  const std::vector<MoebiusMap> maps = letter_maps(g);
  CHECK(evaluate({a, b, inverse_letter(b), A}, maps).is_identity(1e-10));
}

TEST_CASE("free group element counts") {
  const ElementList e = enumerate_elements(load("schottky.grp"), 7);
  CHECK(e.map(0).is_identity(0.0));
  for (int l = 1; l <= 7; ++l) {
    CHECK(e.level_begin(l + 1) - e.level_begin(l) == static_cast<std::size_t>(4 * std::pow(3, l - 1)));
  }
  for (std::size_t i = 1; i < e.size(); i += 97) {
    CHECK(evaluate(e.word(i), letter_maps(load("schottky.grp"))).distance(e.map(i)) < 1e-9);
    CHECK(static_cast<int>(e.word(i).size()) == e.length(i));
  }
  CHECK_THROWS_AS(enumerate_elements(load("schottky.grp"), -1), Error);
  EnumerationOptions small;
  small.element_cap = 100;
  CHECK_THROWS_AS(enumerate_elements(load("schottky.grp"), 6, small), Error);
}

TEST_CASE("surface group elements match a matrix brute force") {
  const GroupDefinition g = load("octagon.grp");
  const std::vector<MoebiusMap> maps = letter_maps(g);
  const int L = 4;
  // Distinct elements among all freely reduced words of length <= l, told apart by their matrices.
  std::vector<MoebiusMap> seen{MoebiusMap()};
  std::vector<std::size_t> up_to{1};
  std::vector<Word> frontier{{}};
  for (int l = 1; l <= L; ++l) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Letter x = 0; x < 8; ++x) {
        if (!w.empty() && x == inverse_letter(w.back())) continue;
        Word u = w;
        u.push_back(x);
        next.push_back(u);
        const MoebiusMap m = evaluate(u, maps);
        if (std::none_of(seen.begin(), seen.end(), [&](const MoebiusMap& s) { return s.distance(m) < 1e-8; })) {
          seen.push_back(m);
        }
      }
    }
    frontier = std::move(next);
    up_to.push_back(seen.size());
  }
  const ElementList e = enumerate_elements(g, L);
  for (int l = 1; l <= L; ++l) CHECK(e.level_begin(l + 1) == up_to[static_cast<std::size_t>(l)]);
  // Shortlex order of normal forms.
  for (std::size_t i = 2; i < e.size(); ++i) {
    const Word u = e.word(i - 1), v = e.word(i);
    CHECK((u.size() < v.size() || (u.size() == v.size() && u < v)));
  }
}

TEST_CASE("free group classes are necklaces") {
  const GroupDefinition g = load("schottky.grp");
  const auto classes = conjugacy_classes(g, 5);
  std::map<int, int> by_length;
  for (const auto& c : classes) {
    ++by_length[c.word_length];
    CHECK(c.canonical_word == least_rotation(c.canonical_word));
    CHECK(is_cyclically_reduced(c.canonical_word));
    CHECK(c.primitive == (primitive_period(c.canonical_word) == c.canonical_word.size()));
    CHECK(std::abs(multiplier(c.representative).lambda - c.multiplier.lambda) < 1e-12);
  }
  // Cyclically reduced words of length l in F_2 up to rotation (Burnside count).
  CHECK(by_length[1] == 4);
  CHECK(by_length[2] == 8);
  CHECK(by_length[3] == 12);
  CHECK(by_length[4] == 26);
  CHECK(by_length[5] == 52);
}

TEST_CASE("surface class words are conjugation invariant") {
  const GroupDefinition g = load("octagon.grp");
  std::mt19937_64 rng(17);
  for (int k = 0; k < 60; ++k) {
    const Word w = random_word(rng, 8, 6);
    if (w.empty()) continue;
    const Word x = random_word(rng, 8, 3);
    Word conj = x;
    conj.insert(conj.end(), w.begin(), w.end());
    const Word xi = inverse(x);
    conj.insert(conj.end(), xi.begin(), xi.end());
    const Word a = canonical_class_word(g, w);
    CHECK(canonical_class_word(g, free_reduce(conj)) == a);
    CHECK(canonical_class_word(g, rotate(w, 2)) == a);
    const std::vector<MoebiusMap> maps = letter_maps(g);
    const double t = std::abs(evaluate(w, maps).trace());
    CHECK(std::abs(std::abs(evaluate(a, maps).trace()) - t) < 1e-10 * t);
  }
}

TEST_CASE("surface classes: one per class, sorted, with matching traces") {
  const GroupDefinition g = load("octagon.grp");
  const auto classes = conjugacy_classes(g, 4);
  std::set<Word> words;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    CHECK(words.insert(c.canonical_word).second);
    CHECK(canonical_class_word(g, c.canonical_word) == c.canonical_word);
    CHECK(static_cast<int>(c.canonical_word.size()) == c.word_length);
    if (i > 0) {
      const auto& p = classes[i - 1];
      CHECK((p.word_length < c.word_length || (p.word_length == c.word_length && p.canonical_word < c.canonical_word)));
    }
  }
  // Every cyclically reduced word of length <= 3 lands in a listed class.
  for (Letter x = 0; x < 8; ++x)
    for (Letter y = 0; y < 8; ++y)
      for (Letter z = 0; z < 8; ++z) {
        const Word w = cyclically_reduce({x, y, z});
        if (!w.empty()) CHECK(words.count(canonical_class_word(g, w)) == 1);
      }
  CHECK_THROWS_AS(canonical_class_word(g, {0, 1}), Error);
}
