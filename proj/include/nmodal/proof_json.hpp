// Proof objects <-> JSON.
//
// node = {"sequent":{"ante":[..],"succ":[..]}, "rule":..., "principal":...?,
//         "aux":{...}?, "premises":[node,...]}
// andL/orR are written as andL1/andL2/orR1/orR2 with aux {"i":k}; impL/cut
// carry aux {"leftAnte":[..],"leftSucc":[..]}.

#ifndef NMODAL_PROOF_JSON_HPP_
#define NMODAL_PROOF_JSON_HPP_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nmodal/calculus.hpp"

namespace nmodal {

class ProofFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json sequent_to_json(const Sequent& s);
Sequent sequent_from_json(const nlohmann::json& j);

nlohmann::json proof_to_json(const Proof& p);
// Unrecognized rule names load as Rule::Unknown so the checker can report them.
Proof proof_from_json(const nlohmann::json& j);

Proof read_proof_file(const std::string& path);
void write_proof_file(const Proof& p, const std::string& path);

}  // namespace nmodal

#endif  // NMODAL_PROOF_JSON_HPP_
