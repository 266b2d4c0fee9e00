#include <algorithm>
#include <random>

#include <doctest.h>

#include "chemlat/error.hpp"
#include "chemlat/lattice.hpp"
#include "chemlat/lattice_io.hpp"

using namespace chemlat;

namespace {

RowSet rows(std::initializer_list<unsigned> one_based) {
  RowSet s;
  for (unsigned i : one_based) s = s | RowSet::of({i - 1});
  return s;
}

ColSet cols(std::initializer_list<unsigned> one_based) {
  ColSet s;
  for (unsigned i : one_based) s = s | ColSet::of({i - 1});
  return s;
}

Relation diagonal(unsigned n) { return build_block_relation({n}, {}, false); }
Relation fig3() { return build_block_relation({4, 4}, {}, true); }
Relation fig4() { return build_block_relation({3, 3, 2}, {3}, true); }

// Rows 1-4 against the would-be closed sets {}, {1}, {1,2}, {3}, {3,4}:
// a hexagon whose forced complements break the orthomodular law.
Relation hexagon() {
  return parse_relation(
      "1 0 0 1 1\n"
      "1 1 0 1 1\n"
      "1 1 1 0 0\n"
      "1 1 1 1 0\n");
}

// Closure straight from the definitions, cell by cell.
RowSet closure_oracle(const Relation& r, RowSet x) {
  std::uint64_t upper = 0;
  for (unsigned i = 0; i < r.n_rows(); ++i) {
    if (!x.contains(i)) continue;
    for (unsigned j = 0; j < r.n_cols(); ++j) {
      if (r.related(i, j)) upper |= std::uint64_t{1} << j;
    }
  }
  RowSet out;
  for (unsigned i = 0; i < r.n_rows(); ++i) {
    bool inside = true;
    for (unsigned j = 0; j < r.n_cols(); ++j) {
      if (r.related(i, j) && !((upper >> j) & 1u)) inside = false;
    }
    if (inside) out = out | RowSet::of({i});
  }
  return out;
}

std::vector<RowSet> elements_oracle(const Relation& r) {
  std::vector<RowSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << r.n_rows()); ++m) {
    if (closure_oracle(r, RowSet{m}) == RowSet{m}) out.push_back(RowSet{m});
  }
  return out;
}

std::vector<Cover> covers_oracle(const Lattice& lat) {
  std::vector<Cover> out;
  const auto& e = lat.elements;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = 0; b < e.size(); ++b) {
      if (!e[a].proper_subset_of(e[b])) continue;
      bool between = false;
      for (std::size_t c = 0; c < e.size() && !between; ++c) {
        between = e[a].proper_subset_of(e[c]) && e[c].proper_subset_of(e[b]);
      }
      if (!between) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<Cover> sorted(std::vector<Cover> v) {
  std::sort(v.begin(), v.end(), [](const Cover& x, const Cover& y) {
    return std::pair(x.lower, x.upper) < std::pair(y.lower, y.upper);
  });
  return v;
}

Relation random_relation(std::mt19937_64& g, unsigned max_side) {
  const unsigned n = 1 + static_cast<unsigned>(g() % max_side);
  const unsigned m = 1 + static_cast<unsigned>(g() % max_side);
  std::vector<std::vector<bool>> cells(n, std::vector<bool>(m, false));
  for (auto& row : cells) {
    for (unsigned j = 0; j < m; ++j) row[j] = (g() % 3) == 0;
  }
  for (unsigned i = 0; i < n; ++i) cells[i][g() % m] = true;
  for (unsigned j = 0; j < m; ++j) cells[g() % n][j] = true;
  return Relation::from_cells(cells);
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("upper approximation") {
    CHECK(upper_approx(fig4(), RowSet{}) == ColSet{});
    CHECK(upper_approx(fig4(), rows({1})) == cols({1, 4, 5, 6, 7}));
    CHECK(upper_approx(diagonal(3), rows({2})) == cols({2}));
  }

  TEST_CASE("lower approximation") {
    const Relation r = fig4();
    CHECK(lower_approx(r, r.all_cols()) == r.all_rows());
    CHECK(lower_approx(r, ColSet{}) == RowSet{});
    CHECK(lower_approx(r, cols({1, 4, 5, 6, 7})) == rows({1}));
  }

  TEST_CASE("closure on the three-block relation") {
    const Relation r = fig4();
    CHECK(r.n_rows() == 7);
    CHECK(closure(r, rows({1})) == rows({1}));
    CHECK(closure(r, rows({3})) == rows({3}));
    CHECK(closure(r, rows({1, 2})) == rows({1, 2, 4, 5}));
    CHECK(closure(r, rows({1, 6})) == r.all_rows());
    CHECK(closure(fig3(), fig3().all_rows()) == fig3().all_rows());
  }

  TEST_CASE("closure operator laws on random relations") {
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 1000; ++trial) {
      const Relation r = random_relation(g, 8);
      const std::uint64_t full = r.all_rows().bits;
      for (int k = 0; k < 8; ++k) {
        const RowSet x{g() & full};
        const RowSet y{x.bits | (g() & full)};
        const RowSet cx = closure(r, x);
        REQUIRE(x.subset_of(cx));
        REQUIRE(closure(r, cx) == cx);
        REQUIRE(cx.subset_of(closure(r, y)));
        REQUIRE(cx == closure_oracle(r, x));
      }
    }
  }

  TEST_CASE("approximations form a Galois adjunction") {
    std::mt19937_64 g(6);
    for (int trial = 0; trial < 500; ++trial) {
      const Relation r = random_relation(g, 8);
      for (int k = 0; k < 16; ++k) {
        const RowSet x{g() & r.all_rows().bits};
        const ColSet y{g() & r.all_cols().bits};
        REQUIRE(upper_approx(r, x).subset_of(y) == x.subset_of(lower_approx(r, y)));
      }
    }
  }

  TEST_CASE("diagonal relations give power sets") {
    for (unsigned n = 1; n <= 6; ++n) {
      const Lattice lat = enumerate_lattice(diagonal(n));
      CHECK(lat.size() == (std::size_t{1} << n));
      for (RowSet x : lat.elements) {
        for (RowSet y : lat.elements) {
          const auto [m, j] = meet_join(lat, x, y);
          REQUIRE(m == (x & y));
          REQUIRE(j == (x | y));
        }
      }
    }
    CHECK(enumerate_lattice(diagonal(3)).size() == 8);
  }

  TEST_CASE("two filled four-blocks give 30 elements") {
    const Relation r = fig3();
    const Lattice lat = enumerate_lattice(r);
    CHECK(lat.size() == 30);
    CHECK(lat.elements == elements_oracle(r));
    CHECK(lat.bottom() == RowSet{});
    CHECK(lat.top() == r.all_rows());
    for (unsigned a = 1; a <= 4; ++a) {
      for (unsigned b = 5; b <= 8; ++b) CHECK(closure(r, rows({a, b})) == r.all_rows());
    }
  }

  TEST_CASE("three-block lattice contains the named blocks") {
    const Lattice lat = enumerate_lattice(fig4());
    for (RowSet x : {RowSet{}, rows({6}), rows({7}), fig4().all_rows(), rows({1}), rows({2}),
                     rows({3}), rows({1, 3}), rows({2, 3}), rows({1, 2, 4, 5}), rows({4}),
                     rows({5}), rows({3, 4}), rows({3, 5})}) {
      CHECK(lat.contains(x));
    }
    CHECK(join(lat, rows({1}), rows({6})) == fig4().all_rows());
  }

  TEST_CASE("meet and join") {
    const Lattice b3 = enumerate_lattice(diagonal(3));
    CHECK(meet(b3, rows({1, 2}), rows({2, 3})) == rows({2}));
    const Lattice lat = enumerate_lattice(fig3());
    for (RowSet x : lat.elements) {
      CHECK(meet(lat, x, lat.bottom()) == lat.bottom());
      CHECK(join(lat, x, lat.top()) == lat.top());
    }
    CHECK_THROWS_AS(meet(lat, rows({1, 5}), rows({1})), DomainError);
    CHECK_THROWS_AS(join(b3, rows({1}), RowSet{0b1000}), DomainError);
  }

  TEST_CASE("meet and join agree with an exhaustive scan") {
    const Lattice lat = enumerate_lattice(fig4());
    for (RowSet x : lat.elements) {
      for (RowSet y : lat.elements) {
        RowSet lo = lat.bottom();
        RowSet hi = lat.top();
        for (RowSet e : lat.elements) {
          if (e.subset_of(x & y) && lo.subset_of(e)) lo = e;
          if ((x | y).subset_of(e) && e.subset_of(hi)) hi = e;
        }
        REQUIRE(meet(lat, x, y) == lo);
        REQUIRE(join(lat, x, y) == hi);
      }
    }
  }

  TEST_CASE("hasse covers") {
    const Lattice two = enumerate_lattice(parse_relation("1"));
    CHECK(two.size() == 2);
    CHECK(two.covers.size() == 1);
    CHECK(enumerate_lattice(diagonal(3)).covers.size() == 12);
    const Lattice lat = enumerate_lattice(fig3());
    CHECK(sorted(lat.covers) == sorted(covers_oracle(lat)));
    CHECK(lat.covers.size() == 64);
    const Lattice l4 = enumerate_lattice(fig4());
    CHECK(sorted(l4.covers) == sorted(covers_oracle(l4)));
  }

  TEST_CASE("complements") {
    const Lattice b3 = enumerate_lattice(diagonal(3));
    CHECK(find_complements(b3, RowSet{}) == std::vector<RowSet>{b3.top()});
    const auto c = find_complements(b3, rows({1}));
    CHECK(std::find(c.begin(), c.end(), rows({2, 3})) != c.end());

    const Lattice lat = enumerate_lattice(fig3());
    for (RowSet x : lat.elements) {
      std::vector<RowSet> want;
      for (RowSet y : lat.elements) {
        if (meet(lat, x, y) == lat.bottom() && join(lat, x, y) == lat.top()) want.push_back(y);
      }
      REQUIRE(find_complements(lat, x) == want);
    }
    // an atom of one block is complemented by every non-trivial element of the other
    CHECK(find_complements(lat, rows({1})).size() == 1 + 14);
  }

  TEST_CASE("distributivity") {
    CHECK(check_distributive(enumerate_lattice(diagonal(3))).distributive);
    const Lattice chain = enumerate_lattice(parse_relation("1 0\n1 1\n"));
    CHECK(chain.elements == std::vector<RowSet>{RowSet{}, rows({1}), rows({1, 2})});
    CHECK(check_distributive(chain).distributive);

    const Lattice lat = enumerate_lattice(fig3());
    const DistributiveCheck d = check_distributive(lat);
    CHECK_FALSE(d.distributive);
    REQUIRE(d.witness);
    const auto [x, y, z] = *d.witness;
    CHECK(meet(lat, x, join(lat, y, z)) != join(lat, meet(lat, x, y), meet(lat, x, z)));
  }

  TEST_CASE("orthomodularity") {
    CHECK(check_orthomodular(enumerate_lattice(diagonal(3))).orthomodular());

    const Lattice lat = enumerate_lattice(fig3());
    const OrthoCheck o = check_orthomodular(lat);
    CHECK(o.orthomodular());
    REQUIRE(o.complement.size() == lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const RowSet x = lat.elements[i];
      const RowSet xc = o.complement[i];
      REQUIRE(o.complement[*lat.index_of(xc)] == x);
      for (std::size_t j = 0; j < lat.size(); ++j) {
        if (x.subset_of(lat.elements[j])) {
          REQUIRE(join(lat, x, meet(lat, xc, lat.elements[j])) == lat.elements[j]);
          REQUIRE(o.complement[j].subset_of(xc));
        }
      }
    }
  }

  TEST_CASE("hexagon violates the orthomodular law") {
    const Lattice lat = enumerate_lattice(hexagon());
    CHECK(lat.elements == std::vector<RowSet>{RowSet{}, rows({1}), rows({1, 2}), rows({3}),
                                              rows({3, 4}), rows({1, 2, 3, 4})});
    const OrthoCheck o = check_orthomodular(lat);
    CHECK(o.status == OrthoStatus::law_violated);
    REQUIRE(o.witness);
    const auto [x, y] = *o.witness;
    CHECK(x == rows({1}));
    CHECK(y == rows({1, 2}));
    // direct evaluation: x' = {3,4}, x' ^ y = {}, x v {} = x != y
    const RowSet xc = o.complement[*lat.index_of(x)];
    CHECK(xc == rows({3, 4}));
    CHECK(x.subset_of(y));
    CHECK(join(lat, x, meet(lat, xc, y)) != y);
  }

  TEST_CASE("blocks and shared elements") {
    const Lattice lat = enumerate_lattice(fig3());
    const LawReport r = analyze_laws(lat);
    REQUIRE(r.blocks.size() == 2);
    CHECK(r.blocks[0].elements.size() == 16);
    CHECK(r.blocks[1].elements.size() == 16);
    CHECK(r.shared == std::vector<RowSet>{lat.bottom(), lat.top()});

    const Lattice l4 = enumerate_lattice(fig4());
    const LawReport r4 = analyze_laws(l4);
    REQUIRE(r4.blocks.size() == 3);
    CHECK(r4.shared ==
          std::vector<RowSet>{RowSet{}, rows({3}), rows({1, 2, 4, 5}), l4.top()});
    bool small_block = false;
    for (const auto& b : r4.blocks) {
      small_block = small_block || b.elements == std::vector<RowSet>{RowSet{}, rows({6}),
                                                                     rows({7}), l4.top()};
    }
    CHECK(small_block);
  }

  TEST_CASE("block generator") {
    const Relation r = build_block_relation({2, 2}, {}, false);
    CHECK(format_relation(r) == "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    const Relation f = build_block_relation({2, 2}, {}, true);
    CHECK(format_relation(f) == "1 0 1 1\n0 1 1 1\n1 1 1 0\n1 1 0 1\n");
    CHECK_THROWS_AS(build_block_relation({3, 3}, {5}, true), ConfigError);
    CHECK_THROWS_AS(build_block_relation({3, 0}, {}, true), ConfigError);
    CHECK_THROWS_AS(build_block_relation({}, {}, true), ConfigError);
  }

  TEST_CASE("relation parsing") {
    const Relation r = parse_relation("# comment\n1 0 1  # trailing\n\n0 1 1\r\n");
    CHECK(r.n_rows() == 2);
    CHECK(r.n_cols() == 3);
    CHECK(r.related(0, 2));
    CHECK_FALSE(r.related(1, 0));
    CHECK(parse_relation("101\n011\n") == r);
    CHECK_THROWS_AS(parse_relation("1 2\n"), InputError);
    CHECK_THROWS_AS(parse_relation("1 0\n0 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_relation("1 0\n1 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_relation("1 0\n1\n"), ConfigError);
    CHECK_THROWS_AS(parse_relation("# nothing\n"), ConfigError);
  }

  TEST_CASE("generator specs") {
    const BlockSpec s = parse_block_spec("blocks=3,3,2;overlap=3;fill");
    CHECK(s.sizes == std::vector<unsigned>{3, 3, 2});
    CHECK(s.overlap == std::vector<unsigned>{3});
    CHECK(s.fill);
    CHECK_THROWS_AS(parse_block_spec("fill"), ConfigError);
    CHECK_THROWS_AS(parse_block_spec("blocks=3,x"), ConfigError);
    CHECK_THROWS_AS(parse_block_spec("blocks=3;colour=red"), ConfigError);
  }

  TEST_CASE("too many rows for enumeration") {
    std::vector<std::vector<bool>> cells(21, std::vector<bool>(21, false));
    for (int i = 0; i < 21; ++i) cells[i][i] = true;
    CHECK_THROWS_AS(enumerate_lattice(Relation::from_cells(cells)), CapacityError);
  }

  TEST_CASE("exports") {
    const Lattice lat = enumerate_lattice(diagonal(2));
    const std::string dot = to_dot(lat);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    CHECK(dot.find("\"{A1,A2}\"") != std::string::npos);
    CHECK(dot.find("\"{}\"") != std::string::npos);
    CHECK(set_label(rows({1, 3})) == "{A1,A3}");

    const auto j = laws_to_json(lat, analyze_laws(lat));
    for (const char* key : {"distributive", "witness", "blocks", "shared", "orthomodular"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["distributive"] == true);
    CHECK(j["orthomodular"] == true);
  }
}
