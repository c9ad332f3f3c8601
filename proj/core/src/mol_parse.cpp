#include "mu/mol_parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mu/errors.hpp"

namespace mu {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, long line) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw MalformedRecord("bad number '" + tok + "'", line);
    if (!std::isfinite(v)) throw MalformedRecord("non-finite coordinate", line);
    return v;
  } catch (const std::invalid_argument&) {
    throw MalformedRecord("bad number '" + tok + "'", line);
  } catch (const std::out_of_range&) {
    throw MalformedRecord("number out of range '" + tok + "'", line);
  }
}

long parse_int(const std::string& tok, long line) {
  try {
    size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw MalformedRecord("bad integer '" + tok + "'", line);
    return v;
  } catch (const std::invalid_argument&) {
    throw MalformedRecord("bad integer '" + tok + "'", line);
  } catch (const std::out_of_range&) {
    throw MalformedRecord("integer out of range '" + tok + "'", line);
  }
}

std::string normalize_element(std::string el) {
  if (el.empty()) return el;
  el[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(el[0])));
  for (size_t i = 1; i < el.size(); ++i)
    el[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(el[i])));
  return el;
}

// SYBYL atom types look like "C.3", "N.ar", "O.co2"; the element is the part
// before the dot.
std::string element_from_sybyl(const std::string& type) {
  auto dot = type.find('.');
  return normalize_element(dot == std::string::npos ? type : type.substr(0, dot));
}

BondOrder mol2_bond_order(const std::string& code, long line) {
  if (code == "1") return BondOrder::SINGLE;
  if (code == "2") return BondOrder::DOUBLE;
  if (code == "3") return BondOrder::TRIPLE;
  if (code == "ar") return BondOrder::AROMATIC;
  if (code == "am") return BondOrder::AMIDE;
  throw MalformedRecord("unknown bond type '" + code + "'", line);
}

void check_no_duplicate_bonds(const Molecule& m) {
  std::unordered_set<long> seen;
  for (const Bond& b : m.bonds) {
    if (b.a == b.b)
      throw DanglingBond("bond connects atom " + std::to_string(b.a) + " to itself");
    long key = static_cast<long>(std::min(b.a, b.b)) * 1000000 + std::max(b.a, b.b);
    if (!seen.insert(key).second)
      throw DanglingBond("duplicate bond between atoms " + std::to_string(b.a) +
                         " and " + std::to_string(b.b));
  }
}

}  // namespace

Molecule parse_mol2(const std::string& text) {
  auto lines = split_lines(text);

  Molecule m;
  std::unordered_map<long, int> id_map;  // file atom id -> 0-based id
  long declared_atoms = -1, declared_bonds = -1;
  bool saw_molecule = false, saw_atoms = false, saw_bonds = false;

  size_t i = 0;
  while (i < lines.size()) {
    std::string line = trim(lines[i]);
    if (line.rfind("@<TRIPOS>", 0) != 0) {
      ++i;
      continue;
    }
    std::string section = line.substr(9);
    ++i;
    if (section == "MOLECULE") {
      saw_molecule = true;
      if (i < lines.size()) m.name = trim(lines[i++]);
      if (i < lines.size()) {
        auto counts = tokens(lines[i]);
        if (!counts.empty() && counts[0].find_first_not_of("0123456789") == std::string::npos) {
          declared_atoms = parse_int(counts[0], static_cast<long>(i) + 1);
          if (counts.size() > 1)
            declared_bonds = parse_int(counts[1], static_cast<long>(i) + 1);
          ++i;
        }
      }
    } else if (section == "ATOM") {
      saw_atoms = true;
      while (i < lines.size() && trim(lines[i]).rfind("@<TRIPOS>", 0) != 0) {
        std::string row = trim(lines[i]);
        long lineno = static_cast<long>(i) + 1;
        ++i;
        if (row.empty()) continue;
        auto t = tokens(row);
        if (t.size() < 6)
          throw MalformedRecord("atom record needs id, name, x, y, z, type", lineno);
        long file_id = parse_int(t[0], lineno);
        Atom a;
        a.id = static_cast<int>(m.atoms.size());
        a.position = {parse_double(t[2], lineno), parse_double(t[3], lineno),
                      parse_double(t[4], lineno)};
        a.element = element_from_sybyl(t[5]);
        if (!id_map.emplace(file_id, a.id).second)
          throw MalformedRecord("duplicate atom id " + std::to_string(file_id), lineno);
        m.atoms.push_back(a);
      }
    } else if (section == "BOND") {
      saw_bonds = true;
      while (i < lines.size() && trim(lines[i]).rfind("@<TRIPOS>", 0) != 0) {
        std::string row = trim(lines[i]);
        long lineno = static_cast<long>(i) + 1;
        ++i;
        if (row.empty()) continue;
        auto t = tokens(row);
        if (t.size() < 4)
          throw MalformedRecord("bond record needs id, a, b, type", lineno);
        long fa = parse_int(t[1], lineno), fb = parse_int(t[2], lineno);
        auto ia = id_map.find(fa), ib = id_map.find(fb);
        if (ia == id_map.end() || ib == id_map.end())
          throw DanglingBond("bond references unknown atom id " +
                             std::to_string(ia == id_map.end() ? fa : fb));
        m.bonds.push_back({ia->second, ib->second, mol2_bond_order(t[3], lineno), false});
      }
    } else {
      std::cerr << "warning: skipping mol2 section @<TRIPOS>" << section << "\n";
      while (i < lines.size() && trim(lines[i]).rfind("@<TRIPOS>", 0) != 0) ++i;
    }
  }

  if (!saw_molecule) throw MissingSection("@<TRIPOS>MOLECULE");
  if (!saw_atoms) throw MissingSection("@<TRIPOS>ATOM");
  if (!saw_bonds && !m.atoms.empty() && m.atoms.size() > 1)
    throw MissingSection("@<TRIPOS>BOND");
  if (declared_atoms >= 0 && declared_atoms != static_cast<long>(m.atoms.size()))
    throw MalformedRecord("molecule declares " + std::to_string(declared_atoms) +
                              " atoms but " + std::to_string(m.atoms.size()) +
                              " were given",
                          1);
  if (declared_bonds >= 0 && declared_bonds != static_cast<long>(m.bonds.size()))
    throw MalformedRecord("molecule declares " + std::to_string(declared_bonds) +
                              " bonds but " + std::to_string(m.bonds.size()) +
                              " were given",
                          1);
  check_no_duplicate_bonds(m);
  annotate_rings(m);
  return m;
}

Molecule parse_mol(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.size() < 4) throw MissingSection("V2000 counts line");

  Molecule m;
  m.name = trim(lines[0]);

  const std::string& counts = lines[3];
  long natoms, nbonds;
  // Counts line uses fixed 3-character fields; fall back to whitespace split
  // for files that pad differently.
  auto fixed = [&](int at) -> std::string {
    if (static_cast<size_t>(at + 3) <= counts.size()) return trim(counts.substr(at, 3));
    return "";
  };
  std::string fa = fixed(0), fb = fixed(3);
  if (!fa.empty() && !fb.empty() &&
      fa.find_first_not_of("0123456789") == std::string::npos &&
      fb.find_first_not_of("0123456789") == std::string::npos) {
    natoms = parse_int(fa, 4);
    nbonds = parse_int(fb, 4);
  } else {
    auto t = tokens(counts);
    if (t.size() < 2) throw MalformedRecord("counts line needs atom and bond counts", 4);
    natoms = parse_int(t[0], 4);
    nbonds = parse_int(t[1], 4);
  }

  size_t row = 4;
  for (long k = 0; k < natoms; ++k, ++row) {
    long lineno = static_cast<long>(row) + 1;
    if (row >= lines.size() || trim(lines[row]).empty() ||
        trim(lines[row]).rfind("M ", 0) == 0)
      throw MalformedRecord("expected atom record " + std::to_string(k + 1) + " of " +
                                std::to_string(natoms),
                            lineno);
    auto t = tokens(lines[row]);
    if (t.size() < 4) throw MalformedRecord("atom record needs x, y, z, element", lineno);
    Atom a;
    a.id = static_cast<int>(k);
    a.position = {parse_double(t[0], lineno), parse_double(t[1], lineno),
                  parse_double(t[2], lineno)};
    a.element = normalize_element(t[3]);
    m.atoms.push_back(a);
  }
  for (long k = 0; k < nbonds; ++k, ++row) {
    long lineno = static_cast<long>(row) + 1;
    if (row >= lines.size() || trim(lines[row]).empty() ||
        trim(lines[row]).rfind("M ", 0) == 0)
      throw MalformedRecord("expected bond record " + std::to_string(k + 1) + " of " +
                                std::to_string(nbonds),
                            lineno);
    std::string raw = lines[row];
    long a, b, code;
    // Bond block is fixed width (aaabbbttt); tokenized fallback covers loose files.
    if (raw.size() >= 9 && tokens(raw.substr(0, 9)).size() == 3) {
      a = parse_int(trim(raw.substr(0, 3)), lineno);
      b = parse_int(trim(raw.substr(3, 3)), lineno);
      code = parse_int(trim(raw.substr(6, 3)), lineno);
    } else {
      auto t = tokens(raw);
      if (t.size() < 3) throw MalformedRecord("bond record needs a, b, type", lineno);
      a = parse_int(t[0], lineno);
      b = parse_int(t[1], lineno);
      code = parse_int(t[2], lineno);
    }
    if (a < 1 || a > natoms || b < 1 || b > natoms)
      throw DanglingBond("bond references unknown atom id " +
                         std::to_string(a < 1 || a > natoms ? a : b));
    BondOrder order;
    switch (code) {
      case 1: order = BondOrder::SINGLE; break;
      case 2: order = BondOrder::DOUBLE; break;
      case 3: order = BondOrder::TRIPLE; break;
      case 4: order = BondOrder::AROMATIC; break;
      default:
        throw MalformedRecord("unknown bond type code " + std::to_string(code), lineno);
    }
    m.bonds.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1), order, false});
  }

  check_no_duplicate_bonds(m);
  annotate_rings(m);
  return m;
}

}  // namespace mu
