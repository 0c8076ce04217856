#pragma once

#include <fstream>
#include <sstream>

#include "acat/functor.hpp"

namespace acat {

// Category presentation format (one document per category):
//
//   category <name>
//   ring Z | Q | F<p>
//   arity <K>                     # optional, default 6
//   object <name>                 # repeated
//   basis <label> : <src> <tgt> <degree>
//   d <label> = <coeff> <label> [+ <coeff> <label> ...]
//   op <k> (<label> ... <label>) = <coeff> <label> [+ ...]   # inputs left-to-right:
//                                                            # op 2 (g f) is "g after f"
//   unit <object> = <coeff> <label> [+ ...]
//   strictly_unital                                          # optional flag
//
// Labels are global to the file.  Lines starting with '#' are comments.
// parse . serialize is the identity on categories.

struct ParseError : error {
  long line;
  ParseError(long line_, const std::string& what)
      : error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

// "<coeff> <label> + <coeff> <label> ..." -> pairs; coeff may be omitted (1)
inline std::vector<std::pair<Scalar, std::string>> parse_combo(
    const Ring& R, const std::vector<std::string>& toks, size_t from, long line) {
  std::vector<std::pair<Scalar, std::string>> out;
  size_t i = from;
  while (i < toks.size()) {
    if (toks[i] == "+") {
      ++i;
      continue;
    }
    Scalar c = Scalar::one(R);
    bool has_coeff = false;
    const std::string& t = toks[i];
    if (t == "0" && i + 1 == toks.size() && out.empty()) return out;  // explicit zero
    if ((t[0] >= '0' && t[0] <= '9') || t[0] == '-' || t[0] == '+') {
      if (t.find_first_not_of("+-0123456789/") == std::string::npos) {
        c = Scalar::from_string(R, t);
        has_coeff = true;
      }
    }
    if (has_coeff) {
      ++i;
      if (i >= toks.size()) throw ParseError(line, "coefficient without a basis label");
    }
    out.emplace_back(c, toks[i]);
    ++i;
  }
  return out;
}

}  // namespace detail

struct NamedCategory {
  std::string name;
  AInftyCategory cat{Ring::prime_field(2)};
};

inline NamedCategory parse_category(std::istream& in) {
  std::string name = "unnamed";
  std::optional<Ring> ring;
  std::optional<AInftyCategory> A;
  std::map<std::string, BasisRef> refs;
  struct Pending {
    long line;
    std::vector<std::string> toks;
  };
  std::vector<Pending> dlines, oplines, unitlines;
  bool strictly = false;
  int arity = 6;

  std::string line;
  long lineno = 0;
  auto need = [&](bool c, long l, const std::string& m) {
    if (!c) throw ParseError(l, m);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokens_of(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "category") {
      need(toks.size() == 2, lineno, "category needs a name");
      name = toks[1];
    } else if (kw == "ring") {
      need(toks.size() == 2, lineno, "ring needs a value");
      ring = Ring::parse(toks[1]);
      A.emplace(*ring);
      A->arity_bound = arity;
    } else if (kw == "arity") {
      need(toks.size() == 2, lineno, "arity needs a value");
      arity = std::stoi(toks[1]);
      if (A) A->arity_bound = arity;
    } else if (kw == "object") {
      need(A.has_value(), lineno, "object before ring");
      need(toks.size() == 2, lineno, "object needs a name");
      A->add_object(toks[1]);
    } else if (kw == "basis") {
      need(A.has_value(), lineno, "basis before ring");
      need(toks.size() == 6 && toks[2] == ":", lineno,
           "expected: basis <label> : <src> <tgt> <degree>");
      need(!refs.count(toks[1]), lineno, "duplicate basis label '" + toks[1] + "'");
      int src = A->object_index(toks[3]), tgt = A->object_index(toks[4]);
      refs[toks[1]] = A->add_basis(src, tgt, std::stoi(toks[5]), toks[1]);
    } else if (kw == "d") {
      dlines.push_back({lineno, toks});
    } else if (kw == "op") {
      oplines.push_back({lineno, toks});
    } else if (kw == "unit") {
      unitlines.push_back({lineno, toks});
    } else if (kw == "strictly_unital") {
      strictly = true;
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  need(A.has_value(), lineno, "missing ring declaration");

  auto combo_to_element = [&](const std::vector<std::pair<Scalar, std::string>>& combo, int src,
                              int tgt, int deg, long l) {
    Element e = Element::zero(A->ring, src, tgt, deg);
    for (const auto& [c, lbl] : combo) {
      auto it = refs.find(lbl);
      need(it != refs.end(), l, "unknown basis label '" + lbl + "'");
      need(it->second.src == src && it->second.tgt == tgt && it->second.deg == deg, l,
           "term '" + lbl + "' has wrong endpoints or degree");
      e.add(it->second.idx, c);
    }
    return e;
  };

  for (const auto& [l, toks] : dlines) {
    need(toks.size() >= 4 && toks[2] == "=", l, "expected: d <label> = <combination>");
    auto it = refs.find(toks[1]);
    need(it != refs.end(), l, "unknown basis label '" + toks[1] + "'");
    BasisRef b = it->second;
    auto combo = detail::parse_combo(A->ring, toks, 3, l);
    Element e = combo_to_element(combo, b.src, b.tgt, b.deg + 1, l);
    CochainComplex& H = A->hom_mut(b.src, b.tgt);
    SparseMatrix d = H.d(b.deg);
    for (const auto& [j, c] : e.coords) d.add_to(j, b.idx, c);
    H.set_d(b.deg, d);
  }
  for (const auto& [l, toks] : oplines) {
    need(toks.size() >= 5, l, "expected: op <k> ( <labels> ) = <combination>");
    int k = std::stoi(toks[1]);
    need(toks[2] == "(", l, "expected '(' after the arity");
    std::vector<BasisRef> tuple;
    size_t i = 3;
    for (; i < toks.size() && toks[i] != ")"; ++i) {
      auto it = refs.find(toks[i]);
      need(it != refs.end(), l, "unknown basis label '" + toks[i] + "'");
      tuple.push_back(it->second);
    }
    need(i < toks.size() && toks[i] == ")", l, "missing ')'");
    need(static_cast<int>(tuple.size()) == k, l, "tuple size differs from the arity");
    need(i + 1 < toks.size() && toks[i + 1] == "=", l, "missing '='");
    // file lists inputs left-to-right (last-applied first); storage is reversed
    std::reverse(tuple.begin(), tuple.end());
    for (size_t q = 0; q + 1 < tuple.size(); ++q)
      need(tuple[q].tgt == tuple[q + 1].src, l, "op tuple is not composable");
    int degsum = 0;
    for (const auto& b : tuple) degsum += b.deg;
    auto combo = detail::parse_combo(A->ring, toks, i + 2, l);
    Element out = combo_to_element(combo, tuple.front().src, tuple.back().tgt, degsum + 2 - k, l);
    A->set_op(k, tuple, out);
  }
  for (const auto& [l, toks] : unitlines) {
    need(toks.size() >= 4 && toks[2] == "=", l, "expected: unit <object> = <combination>");
    int x = A->object_index(toks[1]);
    auto combo = detail::parse_combo(A->ring, toks, 3, l);
    A->units[x] = combo_to_element(combo, x, x, 0, l);
  }
  A->strictly_unital = strictly;
  A->validate();
  if (strictly)
    for (const auto& [x, e] : A->units)
      if (!is_strict_unit(*A, x, e))
        throw ParseError(0, "declared strictly_unital but the unit of " + A->objects[x] +
                                " is not strict");
  return NamedCategory{name, *A};
}

inline NamedCategory parse_category_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path + "'");
  return parse_category(in);
}

inline std::string combo_string(const AInftyCategory& A, const Element& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [i, c] : e.coords) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += c.to_string() + " ";
    s += A.label(BasisRef{e.src, e.tgt, e.deg, i});
  }
  return s;
}

inline std::string serialize_category(const NamedCategory& nc) {
  const AInftyCategory& A = nc.cat;
  std::ostringstream os;
  os << "category " << nc.name << "\n";
  os << "ring " << A.ring.name() << "\n";
  os << "arity " << A.arity_bound << "\n";
  for (const auto& o : A.objects) os << "object " << o << "\n";
  for (const auto& [xy, H] : A.homs)
    for (const auto& [d, ls] : H.module.basis)
      for (const auto& l : ls)
        os << "basis " << l << " : " << A.objects[xy.first] << " " << A.objects[xy.second] << " "
           << d << "\n";
  for (const auto& [xy, H] : A.homs)
    for (const auto& [d, ls] : H.module.basis)
      for (long i = 0; i < static_cast<long>(ls.size()); ++i) {
        Element e = A.m1(Element::basis(A.ring, BasisRef{xy.first, xy.second, d, i}));
        if (!e.is_zero()) os << "d " << ls[i] << " = " << combo_string(A, e) << "\n";
      }
  for (const auto& [k, table] : A.ops)
    for (const auto& [tuple, out] : table) {
      if (out.is_zero()) continue;
      os << "op " << k << " (";
      for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) os << " " << A.label(*it);
      os << " ) = " << combo_string(A, out) << "\n";
    }
  for (const auto& [x, e] : A.units)
    os << "unit " << A.objects[x] << " = " << combo_string(A, e) << "\n";
  if (A.strictly_unital) os << "strictly_unital\n";
  return os.str();
}

// Functor presentation: mirrors the category format.
//
//   functor <name>
//   object <src-object> -> <tgt-object>
//   component <k> (<labels>) = <combination>      # labels in the source,
//                                                 # combination in the target
inline AInftyFunctor parse_functor(std::istream& in, const AInftyCategory& src,
                                   const AInftyCategory& tgt) {
  AInftyFunctor f{src, tgt, std::vector<int>(src.objects.size(), -1), {}};
  std::string line;
  long lineno = 0;
  auto need = [&](bool c, const std::string& m) {
    if (!c) throw ParseError(lineno, m);
  };
  auto find_ref = [&](const AInftyCategory& C, const std::string& lbl) {
    for (const auto& [xy, H] : C.homs)
      for (const auto& [d, ls] : H.module.basis)
        for (long i = 0; i < static_cast<long>(ls.size()); ++i)
          if (ls[i] == lbl) return BasisRef{xy.first, xy.second, d, i};
    throw ParseError(lineno, "unknown basis label '" + lbl + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] == "functor") continue;
    if (toks[0] == "object") {
      need(toks.size() == 4 && toks[2] == "->", "expected: object <src> -> <tgt>");
      f.ob[src.object_index(toks[1])] = tgt.object_index(toks[3]);
    } else if (toks[0] == "component") {
      need(toks.size() >= 5 && toks[2] == "(", "expected: component <k> ( <labels> ) = ...");
      int k = std::stoi(toks[1]);
      std::vector<BasisRef> tuple;
      size_t i = 3;
      for (; i < toks.size() && toks[i] != ")"; ++i) tuple.push_back(find_ref(src, toks[i]));
      need(i + 1 < toks.size() && toks[i] == ")" && toks[i + 1] == "=", "missing ') ='");
      need(static_cast<int>(tuple.size()) == k, "tuple size differs from the arity");
      std::reverse(tuple.begin(), tuple.end());
      int degsum = 0;
      for (const auto& b : tuple) degsum += b.deg;
      auto combo = detail::parse_combo(tgt.ring, toks, i + 2, lineno);
      Element out = Element::zero(tgt.ring, f.ob[tuple.front().src], f.ob[tuple.back().tgt],
                                  degsum + 1 - k);
      for (const auto& [c, lbl] : combo) {
        BasisRef r = find_ref(tgt, lbl);
        need(r.src == out.src && r.tgt == out.tgt && r.deg == out.deg,
             "component term has wrong endpoints or degree");
        out.add(r.idx, c);
      }
      f.set(k, tuple, out);
    } else {
      throw ParseError(lineno, "unknown keyword '" + toks[0] + "'");
    }
  }
  for (int x = 0; x < static_cast<int>(src.objects.size()); ++x)
    need(f.ob[x] >= 0, "missing object assignment for " + src.objects[x]);
  return f;
}

}  // namespace acat
