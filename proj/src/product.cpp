#include "rpmc/product.hpp"

#include "rpmc/measures.hpp"

#include <map>
#include <stdexcept>

namespace rpmc {

ProductChain build_product(const TransitionMatrix& chain, std::span<const StateSet> atom_sets, ltl::Dra& dra) {
  const std::size_t n = chain.size();
  std::vector<ltl::Letter> letters(n, ltl::Letter(atom_sets.size()));
  for (StateId s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < atom_sets.size(); ++a) letters[s][a] = atom_sets[a].test(s);
  }

  ProductChain product;
  std::map<std::pair<StateId, int>, StateId> ids;
  std::vector<std::vector<Transition>> rows;
  auto id_of = [&](StateId s, int q) {
    auto [it, inserted] = ids.emplace(std::make_pair(s, q), product.chain_state.size());
    if (inserted) {
      product.chain_state.push_back(s);
      product.automaton_state.push_back(q);
    }
    return it->second;
  };

  for (StateId s = 0; s < n; ++s) {
    product.entry.push_back(id_of(s, dra.successor(ltl::Dra::kInitial, letters[s])));
  }
  for (StateId p = 0; p < product.chain_state.size(); ++p) {
    const StateId s = product.chain_state[p];
    const int q = product.automaton_state[p];
    std::vector<Transition> row;
    for (const auto& t : chain.row(s)) {
      row.push_back({id_of(t.target, dra.successor(q, letters[t.target])), t.probability});
    }
    rows.push_back(std::move(row));
  }

  product.matrix = TransitionMatrix(rows.size());
  for (StateId p = 0; p < rows.size(); ++p) {
    for (const auto& t : rows[p]) product.matrix.add(p, t.target, t.probability);
  }

  product.accepting.resize(rows.size());
  for (const auto& bscc : bsccs(product.matrix)) {
    std::vector<int> automaton_states;
    for (auto p = bscc.find_first(); p != StateSet::npos; p = bscc.find_next(p)) {
      automaton_states.push_back(product.automaton_state[p]);
    }
    if (dra.accepting(automaton_states)) product.accepting |= bscc;
  }
  return product;
}

ProbVector ltl_probability(const TransitionMatrix& chain, std::span<const StateSet> atom_sets, const ltl::LtlPtr& f,
                           std::size_t max_states) {
  if (ltl::atom_bound(*f) > atom_sets.size()) {
    throw std::invalid_argument("ltl_probability: formula uses an atom without a labeling");
  }
  std::vector<ltl::Letter> letters;
  for (StateId s = 0; s < chain.size(); ++s) {
    ltl::Letter letter(atom_sets.size());
    for (std::size_t a = 0; a < atom_sets.size(); ++a) letter[a] = atom_sets[a].test(s);
    letters.push_back(std::move(letter));
  }
  ltl::Nba nba(f, max_states);
  nba.prune(letters);
  ltl::Dra dra(std::move(nba), max_states);
  ProductChain product = build_product(chain, atom_sets, dra);
  ProbVector in_product = prob_reach(product.matrix, product.accepting);
  ProbVector out(chain.size());
  for (StateId s = 0; s < chain.size(); ++s) out[s] = in_product[product.entry[s]];
  return out;
}

}  // namespace rpmc
