#include "covres/cli.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covres {

namespace {

std::string float_string(const BigFloat& v) {
  // digits = 0 asks boost for enough digits to round-trip exactly.
  return v.str(0, std::ios_base::scientific);
}

std::size_t parse_count(const std::string& line, const std::string& key) {
  std::istringstream in(line);
  std::string word;
  long long n = -1;
  if (!(in >> word >> n) || word != key || n < 0)
    throw std::runtime_error("group cache: bad '" + key + "' line");
  return static_cast<std::size_t>(n);
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
  return out.str();
}

std::string cache_group(const std::string& path, const MatrixGroup& group,
                        std::size_t expected_order,
                        const std::vector<std::string>& notes) {
  if (group.elements.empty())
    throw std::invalid_argument("cache_group: empty matrix list");
  const int dim = group.elements.front().dim();
  if (expected_order == 0) expected_order = group.elements.size();

  std::ostringstream body;
  body << "covres-group-cache v1\n";
  body << "dimension " << dim << "\n";
  body << "count " << group.elements.size() << "\n";
  body << "order " << expected_order << "\n";
  body << "precision " << BigFloat::default_precision() << "\n";
  for (const auto& note : notes) body << "note " << note << "\n";
  for (std::size_t k = 0; k < group.elements.size(); ++k) {
    body << "matrix " << k << "\n";
    for (const BigComplex& e : group.elements[k].entries())
      body << float_string(e.re) << " " << float_string(e.im) << "\n";
  }

  const std::string checksum = fnv1a_hex(body.str());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cache_group: cannot write " + path);
  out << body.str() << "checksum " << checksum << "\n";
  if (!out) throw std::runtime_error("cache_group: write failed for " + path);
  return checksum;
}

MatrixGroup load_group(const std::string& path, const ToleranceConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_group: cannot read " + path);

  std::string body, line, checksum_line;
  while (std::getline(in, line)) {
    if (line.rfind("checksum ", 0) == 0) {
      checksum_line = line;
      break;
    }
    body += line;
    body += "\n";
  }
  if (checksum_line.empty())
    throw std::runtime_error("load_group: missing checksum line");
  const std::string stored = checksum_line.substr(9);
  if (stored != fnv1a_hex(body))
    throw std::runtime_error("load_group: checksum mismatch (corrupt cache)");

  std::istringstream text(body);
  std::getline(text, line);
  if (line != "covres-group-cache v1")
    throw std::runtime_error("load_group: unknown cache version");
  std::getline(text, line);
  const int dim = static_cast<int>(parse_count(line, "dimension"));
  std::getline(text, line);
  const std::size_t count = parse_count(line, "count");
  std::getline(text, line);
  const std::size_t order = parse_count(line, "order");
  std::getline(text, line);  // precision: informational only
  parse_count(line, "precision");

  std::vector<LinearSubstitution> stored_mats;
  stored_mats.reserve(count);
  while (std::getline(text, line)) {
    if (line.rfind("note ", 0) == 0) continue;
    if (line.rfind("matrix ", 0) != 0)
      throw std::runtime_error("load_group: unexpected line: " + line);
    LinearSubstitution m(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        if (!std::getline(text, line))
          throw std::runtime_error("load_group: truncated matrix block");
        std::istringstream pair(line);
        std::string res, ims;
        if (!(pair >> res >> ims))
          throw std::runtime_error("load_group: bad entry line: " + line);
        try {
          m.at(r, c) = BigComplex(BigFloat(res), BigFloat(ims));
        } catch (const std::exception&) {
          throw std::runtime_error("load_group: unparsable entry: " + line);
        }
      }
    stored_mats.push_back(std::move(m));
  }
  if (stored_mats.size() != count)
    throw std::runtime_error("load_group: matrix count mismatch");

  // Re-verification: nothing from disk is trusted.  Determinants first, then
  // closure to exactly the stated order; stale low-precision entries fail
  // one of the two (the closure dedup compares at eq_tolerance).
  const BigFloat tol = boost::multiprecision::sqrt(cfg.eq_tolerance);
  for (const auto& m : stored_mats)
    if (abs(m.determinant() - BigComplex(1)) > tol)
      throw std::runtime_error("load_group: re-verification failed (determinant)");
  MatrixGroup closed;
  try {
    closed = close_group(stored_mats, order, cfg);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("load_group: re-verification failed "
                                         "(closure): ") +
                             e.what());
  }
  if (closed.order() != order)
    throw std::runtime_error("load_group: re-verification failed (order)");

  // Ternary caches of the Valentiner order must also respect the conic
  // permutation property, element by element.
  if (dim == 3 && order == 1080) {
    const ConicSystem conics = gerbaldi_conics();
    for (const auto& e : closed.elements)
      if (!conic_action_of(e, conics, tol))
        throw std::runtime_error(
            "load_group: re-verification failed (conic permutation)");
  }

  closed.generators = stored_mats;
  return closed;
}

}  // namespace covres
