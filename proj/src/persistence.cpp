#include "topovel/persistence.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace topovel {

bool PersistenceDiagram::has_essential() const {
  return std::any_of(pairs.begin(), pairs.end(),
                     [](const PersistencePair& p) { return p.is_essential(); });
}

std::vector<PersistencePair> PersistenceDiagram::sorted_pairs() const {
  auto out = pairs;
  std::sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  return out;
}

PersistenceDiagram make_diagram(std::vector<PersistencePair> pairs, int dimension) {
  PersistenceDiagram d;
  d.dimension = dimension;
  d.pairs = std::move(pairs);
  return d;
}

namespace {

using Column = std::vector<std::size_t>;

// a <- a + b over Z/2 on sorted index lists.
void add_column(Column& a, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  a.swap(out);
}

void check_input(const FilteredComplex& fc, int max_hom_dim) {
  if (max_hom_dim < 0) throw std::invalid_argument("compute_diagrams: max_hom_dim must be >= 0");
  if (max_hom_dim + 1 > fc.max_dimension())
    throw std::invalid_argument("compute_diagrams: complex must contain simplices of dimension max_hom_dim + 1");
  if (!fc.is_valid_filtration())
    throw std::invalid_argument("compute_diagrams: simplices are not in a valid filtration order");
}

void sort_pairs(std::vector<PersistenceDiagram>& diagrams) {
  for (auto& d : diagrams) d.pairs = d.sorted_pairs();
}

}  // namespace

std::vector<PersistenceDiagram> compute_diagrams(const FilteredComplex& fc, int max_hom_dim) {
  check_input(fc, max_hom_dim);
  const auto simplices = fc.simplices();
  const std::size_t n = simplices.size();

  std::map<Simplex, std::size_t> index;
  std::vector<Column> columns(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& face : simplices[j].simplex.facets()) columns[j].push_back(index.at(face));
    std::sort(columns[j].begin(), columns[j].end());
    index.emplace(simplices[j].simplex, j);
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_with_low(n, kNone);
  std::vector<bool> destroyed(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty() && column_with_low[col.back()] != kNone)
      add_column(col, columns[column_with_low[col.back()]]);
    if (!col.empty()) {
      column_with_low[col.back()] = j;
      destroyed[col.back()] = true;
    }
  }

  std::vector<PersistenceDiagram> diagrams(static_cast<std::size_t>(max_hom_dim) + 1);
  for (int k = 0; k <= max_hom_dim; ++k) diagrams[k].dimension = k;
  for (std::size_t j = 0; j < n; ++j) {
    const int dim = simplices[j].simplex.dimension();
    if (!columns[j].empty()) {
      const std::size_t creator = columns[j].back();
      if (dim - 1 <= max_hom_dim)
        diagrams[dim - 1].pairs.push_back({simplices[creator].value, simplices[j].value});
    } else if (!destroyed[j] && dim <= max_hom_dim) {
      diagrams[dim].pairs.push_back({simplices[j].value, kEssential});
    }
  }
  sort_pairs(diagrams);
  return diagrams;
}

PersistenceDiagram zero_dim_diagram(const FilteredComplex& fc) {
  check_input(fc, 0);
  const auto simplices = fc.simplices();
  // Union-find over vertex positions; each root is the oldest vertex of its
  // component so the younger root dies when two components merge.
  std::map<Vertex, std::size_t> position;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> slot_to_position;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  PersistenceDiagram out;
  out.dimension = 0;
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    const auto& [s, value] = simplices[j];
    if (s.dimension() == 0) {
      position.emplace(s.vertices()[0], parent.size());
      parent.push_back(parent.size());
      slot_to_position.push_back(j);
    } else if (s.dimension() == 1) {
      std::size_t a = find(position.at(s.vertices()[0]));
      std::size_t b = find(position.at(s.vertices()[1]));
      if (a == b) continue;
      if (slot_to_position[a] > slot_to_position[b]) std::swap(a, b);
      out.pairs.push_back({simplices[slot_to_position[b]].value, value});
      parent[b] = a;
    }
  }
  for (std::size_t x = 0; x < parent.size(); ++x)
    if (find(x) == x) out.pairs.push_back({simplices[slot_to_position[x]].value, kEssential});
  out.pairs = out.sorted_pairs();
  return out;
}

int betti_at(const PersistenceDiagram& diagram, double t) {
  return static_cast<int>(std::count_if(
      diagram.pairs.begin(), diagram.pairs.end(),
      [t](const PersistencePair& p) { return p.birth <= t && t < p.death; }));
}

int betti_at(const FilteredComplex& fc, double t, int k) {
  if (k < 0) throw std::invalid_argument("betti_at: k must be >= 0");
  return betti_at(compute_diagrams(fc, k)[static_cast<std::size_t>(k)], t);
}

PersistenceDiagram finalize_diagram(const PersistenceDiagram& raw, const FinalizeOptions& options) {
  PersistenceDiagram out;
  out.dimension = raw.dimension;
  out.policy.zero_persistence_discarded = options.discard_zero_persistence;
  if (options.cap) {
    out.policy.handling = EssentialHandling::kCapped;
    out.policy.cap = *options.cap;
  } else {
    out.policy.handling = EssentialHandling::kDropped;
  }
  for (const auto& p : raw.pairs) {
    PersistencePair q = p;
    if (q.is_essential()) {
      if (!options.cap) continue;
      if (*options.cap < q.birth)
        throw std::invalid_argument("finalize_diagram: cap value lies below an essential birth");
      q.death = *options.cap;
    }
    if (options.discard_zero_persistence && q.birth == q.death) continue;
    out.pairs.push_back(q);
  }
  return out;
}

void write_diagrams_csv(std::ostream& out, const std::vector<PersistenceDiagram>& diagrams) {
  out << "dimension,birth,death\n";
  std::ostringstream line;
  line.precision(17);
  for (const auto& d : diagrams) {
    for (const auto& p : d.pairs) {
      line.str("");
      line << d.dimension << ',' << p.birth << ',';
      if (p.is_essential()) line << "inf";
      else line << p.death;
      out << line.str() << '\n';
    }
  }
}

std::vector<PersistenceDiagram> read_diagrams_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("diagram csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "dimension,birth,death")
    throw std::runtime_error("diagram csv: expected header 'dimension,birth,death'");
  std::vector<PersistenceDiagram> diagrams;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string dim_s, birth_s, death_s, extra;
    if (!std::getline(fields, dim_s, ',') || !std::getline(fields, birth_s, ',') ||
        !std::getline(fields, death_s, ',') || std::getline(fields, extra, ','))
      throw std::runtime_error("diagram csv: row " + std::to_string(row) + " must have 3 fields");
    try {
      std::size_t used = 0;
      const int dim = std::stoi(dim_s, &used);
      if (used != dim_s.size() || dim < 0) throw std::invalid_argument(dim_s);
      const double birth = std::stod(birth_s, &used);
      if (used != birth_s.size()) throw std::invalid_argument(birth_s);
      double death = kEssential;
      if (death_s != "inf") {
        death = std::stod(death_s, &used);
        if (used != death_s.size()) throw std::invalid_argument(death_s);
      }
      if (death < birth) throw std::invalid_argument("death < birth");
      while (diagrams.size() <= static_cast<std::size_t>(dim)) {
        diagrams.emplace_back();
        diagrams.back().dimension = static_cast<int>(diagrams.size()) - 1;
      }
      diagrams[dim].pairs.push_back({birth, death});
    } catch (const std::exception&) {
      throw std::runtime_error("diagram csv: malformed row " + std::to_string(row));
    }
  }
  return diagrams;
}

}  // namespace topovel
