#include <doctest.h>

#include <random>

#include "tarski/clopen.hpp"

using namespace tarski;

namespace {

ModelRef boundary_f2() { return make_model(GroupSpec({{"a", 0}, {"b", 0}}), ActionKind::Boundary); }
ModelRef boundary_z2z3() {
  return make_model(GroupSpec({{"s", 2}, {"t", 3}}), ActionKind::Boundary);
}
ModelRef self_f2() { return make_model(GroupSpec({{"a", 0}, {"b", 0}}), ActionKind::SelfAction); }
ModelRef self_z() { return make_model(GroupSpec({{"a", 0}}), ActionKind::SelfAction); }

ClopenSet cyl(const ModelRef& m, const char* w) {
  return ClopenSet::cylinder(m, parse_word(m->spec, w));
}
ClopenSet cone_of(const ModelRef& m, const char* w) {
  return ClopenSet::cone(m, parse_word(m->spec, w));
}
Word wd(const ModelRef& m, const char* w) { return parse_word(m->spec, w); }

// random canonical letter word of exact length, for membership sampling
LetterWord random_prefix(const GroupSpec& spec, int len, std::mt19937_64& rng) {
  LetterWord w;
  for (int i = 0; i < len; ++i) {
    auto opts = next_letters(spec, w);
    w.push_back(opts[rng() % opts.size()]);
  }
  return w;
}

}  // namespace

TEST_CASE("boundary model rejects degenerate boundaries") {
  CHECK_THROWS_AS(make_model(GroupSpec({{"a", 0}}), ActionKind::Boundary), ClopenError);
  CHECK_THROWS_AS(make_model(GroupSpec({{"s", 2}, {"t", 2}}), ActionKind::Boundary), ClopenError);
  CHECK_THROWS_AS(make_model(GroupSpec({{"s", 5}}), ActionKind::Boundary), ClopenError);
  CHECK_NOTHROW(make_model(GroupSpec({{"s", 2}, {"t", 3}}), ActionKind::Boundary));
  CHECK_NOTHROW(make_model(GroupSpec({{"s", 2}, {"t", 2}, {"u", 2}}), ActionKind::Boundary));
  CHECK_NOTHROW(make_model(GroupSpec({{"a", 0}}), ActionKind::SelfAction));
}

TEST_CASE("boundary boolean algebra basics") {
  auto m = boundary_f2();
  auto X = ClopenSet::whole(m);
  auto A = cyl(m, "a");

  // complement of [a] is the other three first-letter cylinders
  auto comp = A.complement();
  auto expect = cyl(m, "a^-1").set_union(cyl(m, "b")).set_union(cyl(m, "b^-1"));
  CHECK(comp == expect);
  CHECK(A.set_union(comp) == X);
  CHECK(A.set_intersect(comp).is_empty());

  // nested cylinders
  CHECK(A.set_intersect(cyl(m, "a b")) == cyl(m, "a b"));
  CHECK(cyl(m, "a b").is_subset_of(A));
  CHECK(cyl(m, "a b").is_disjoint_from(cyl(m, "b")));

  // sibling-complete families collapse
  auto sum = cyl(m, "a^2").set_union(cyl(m, "a b")).set_union(cyl(m, "a b^-1"));
  CHECK(sum == A);
  CHECK(sum.depth() == 1);
}

TEST_CASE("self-action algebra basics") {
  auto m = self_f2();
  auto G = ClopenSet::whole(m);
  auto e = ClopenSet::point(m, Word{});
  auto parts = e.set_union(cone_of(m, "a"))
                   .set_union(cone_of(m, "a^-1"))
                   .set_union(cone_of(m, "b"))
                   .set_union(cone_of(m, "b^-1"));
  CHECK(parts == G);

  auto compl_a = cone_of(m, "a").complement();
  auto expect =
      e.set_union(cone_of(m, "a^-1")).set_union(cone_of(m, "b")).set_union(cone_of(m, "b^-1"));
  CHECK(compl_a == expect);

  CHECK(G.contains_point(wd(m, "a b a")));
  CHECK(cone_of(m, "a b").contains_point(wd(m, "a b^-1")) == false);
  CHECK(cone_of(m, "a b").contains_point(wd(m, "a b a b")));
  CHECK(e.contains_point(Word{}));
  CHECK(!e.contains_point(wd(m, "a")));
}

TEST_CASE("boundary translation") {
  auto m = boundary_f2();
  // no cancellation: definitional prefixing
  CHECK(cyl(m, "a").translated(wd(m, "b")) == cyl(m, "b a"));
  // full cancellation across the cylinder root
  CHECK(cyl(m, "a^-1").translated(wd(m, "a")) == cyl(m, "a").complement());
  // identity and inverses
  auto V = cyl(m, "a b").set_union(cyl(m, "b^-1"));
  CHECK(V.translated(Word{}) == V);
  for (const char* g : {"a", "b^-1 a", "a^2 b"}) {
    Word w = wd(m, g);
    CHECK(V.translated(w).translated(inverse(m->spec, w)) == V);
  }
}

TEST_CASE("self-action translation") {
  auto m = self_f2();
  // a.C(a^-1) = G minus C(a); the identity lands in the image
  auto img = cone_of(m, "a^-1").translated(wd(m, "a"));
  CHECK(img == cone_of(m, "a").complement());
  CHECK(img.contains_point(Word{}));
  // a.C(a) = C(a^2)
  CHECK(cone_of(m, "a").translated(wd(m, "a")) == cone_of(m, "a^2"));
  // points translate exactly
  auto p = ClopenSet::point(m, wd(m, "b"));
  CHECK(p.translated(wd(m, "b^-1")) == ClopenSet::point(m, Word{}));
}

TEST_CASE("translation distributes over boolean ops (randomized)") {
  std::mt19937_64 rng(12345);
  for (auto m : {boundary_f2(), boundary_z2z3()}) {
    const auto& spec = m->spec;
    auto b2 = ball(spec, 2);
    for (int iter = 0; iter < 25; ++iter) {
      auto rand_set = [&]() {
        ClopenSet s = ClopenSet::empty(m);
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i)
          s = s.set_union(ClopenSet::cylinder(m, b2[rng() % b2.size()]));
        return s;
      };
      ClopenSet A = rand_set(), B = rand_set();
      Word g = b2[rng() % b2.size()];
      CHECK(A.set_union(B).translated(g) == A.translated(g).set_union(B.translated(g)));
      CHECK(A.set_intersect(B).translated(g) ==
            A.translated(g).set_intersect(B.translated(g)));
      CHECK(A.complement().translated(g) == A.translated(g).complement());
      CHECK(A.translated(g).translated(inverse(spec, g)) == A);
    }
  }
}

TEST_CASE("canonical form matches pointwise membership (randomized)") {
  std::mt19937_64 rng(777);
  auto m = boundary_f2();
  const auto& spec = m->spec;
  auto b2 = ball(spec, 2);
  for (int iter = 0; iter < 60; ++iter) {
    // random expression over random cylinders, evaluated two ways
    ClopenSet A = ClopenSet::cylinder(m, b2[rng() % b2.size()]);
    ClopenSet B = ClopenSet::cylinder(m, b2[rng() % b2.size()]);
    ClopenSet C = ClopenSet::cylinder(m, b2[rng() % b2.size()]);
    ClopenSet S = A.set_union(B.complement()).set_intersect(C.complement().set_union(A));
    for (int q = 0; q < 20; ++q) {
      LetterWord p = random_prefix(spec, 8, rng);
      bool in_a = A.contains_end(p), in_b = B.contains_end(p), in_c = C.contains_end(p);
      bool expect = (in_a || !in_b) && (!in_c || in_a);
      CHECK(S.contains_end(p) == expect);
    }
  }
}

TEST_CASE("atoms") {
  auto m = boundary_f2();
  auto A = cyl(m, "a");

  auto at1 = atoms({A});
  REQUIRE(at1.size() == 2);
  CHECK(at1[0] == A);
  CHECK(at1[1] == A.complement());

  auto at2 = atoms({A, cyl(m, "a b")});
  REQUIRE(at2.size() == 3);

  auto X = ClopenSet::whole(m);
  auto at3 = atoms({X});
  REQUIRE(at3.size() == 1);
  CHECK(at3[0] == X);

  // pairwise disjoint, cover, regenerate each input
  std::vector<ClopenSet> fam{A, cyl(m, "b").set_union(cyl(m, "a b")), cyl(m, "a^-1")};
  auto at = atoms(fam);
  ClopenSet uni = ClopenSet::empty(m);
  for (size_t i = 0; i < at.size(); ++i) {
    CHECK(!at[i].is_empty());
    for (size_t j = i + 1; j < at.size(); ++j) CHECK(at[i].is_disjoint_from(at[j]));
    uni = uni.set_union(at[i]);
  }
  CHECK(uni == X);
  for (const auto& f : fam) {
    ClopenSet rebuilt = ClopenSet::empty(m);
    for (const auto& a : at)
      if (a.is_subset_of(f)) rebuilt = rebuilt.set_union(a);
    CHECK(rebuilt == f);
  }
}

TEST_CASE("atoms in the cone algebra") {
  auto m = self_z();
  auto fam = std::vector<ClopenSet>{cone_of(m, "a"), ClopenSet::point(m, Word{})};
  auto at = atoms(fam);
  ClopenSet uni = ClopenSet::empty(m);
  for (const auto& a : at) uni = uni.set_union(a);
  CHECK(uni == ClopenSet::whole(m));
  REQUIRE(at.size() == 3);
}

TEST_CASE("refine_cover_to_partition") {
  auto m = boundary_f2();
  auto X = ClopenSet::whole(m);
  auto A = cyl(m, "a");

  auto r1 = refine_cover_to_partition({A, A.complement()}, X);
  CHECK(r1.parts[0] == A);
  CHECK(r1.parts[1] == A.complement());
  CHECK(r1.empty_indices.empty());

  auto r2 = refine_cover_to_partition({X, X}, X);
  CHECK(r2.parts[0] == X);
  CHECK(r2.parts[1].is_empty());
  CHECK(r2.empty_indices == std::vector<int>{1});

  auto B = cyl(m, "b");
  auto Bm = cyl(m, "b^-1");
  auto Am = cyl(m, "a^-1");
  auto r3 = refine_cover_to_partition({A.set_union(B), B.set_union(Bm), Am}, X);
  CHECK(r3.parts[0] == A.set_union(B));
  CHECK(r3.parts[1] == Bm);
  CHECK(r3.parts[2] == Am);

  CHECK_THROWS_AS(refine_cover_to_partition({A}, X), ClopenError);
}

TEST_CASE("model mismatch is an error") {
  auto m1 = boundary_f2();
  auto m2 = boundary_z2z3();
  CHECK_THROWS_AS(cyl(m1, "a").set_union(cyl(m2, "s")), ClopenError);
}

TEST_CASE("order-four factor boundary: translation is exact across antipodes") {
  auto m = make_model(GroupSpec({{"s", 4}, {"t", 2}}), ActionKind::Boundary);
  const auto& spec = m->spec;
  std::mt19937_64 rng(5150);
  auto b2 = ball(spec, 2);
  for (int iter = 0; iter < 20; ++iter) {
    ClopenSet A = ClopenSet::cylinder(m, b2[rng() % b2.size()])
                      .set_union(ClopenSet::cylinder(m, b2[rng() % b2.size()]));
    Word g = b2[rng() % b2.size()];
    CHECK(A.translated(g).translated(inverse(spec, g)) == A);
    CHECK(A.complement().translated(g) == A.translated(g).complement());
    // membership agrees pointwise
    for (int q = 0; q < 10; ++q) {
      LetterWord p = random_prefix(spec, 8, rng);
      bool in_img = A.translated(g).contains_end(p);
      // g^-1 . end-through-p lies in A iff p's class translates into A
      ClopenSet cell = ClopenSet::from_cylinders(m, {p});
      CHECK(in_img == cell.translated(inverse(spec, g)).is_subset_of(A));
    }
  }
}

TEST_CASE("finite-factor boundary: single-child chains collapse") {
  auto m = boundary_z2z3();
  // after t the only continuation is s, so [t] = [t s] canonically
  auto t = cyl(m, "t");
  auto ts = cyl(m, "t s");
  CHECK(t == ts);
  CHECK(t.depth() == 1);

  // translations stay exact
  const auto& spec = m->spec;
  auto b2 = ball(spec, 2);
  for (const Word& g : b2) {
    CHECK(t.translated(g).translated(inverse(spec, g)) == t);
  }
}
