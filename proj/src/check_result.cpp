#include "axtherm/check_result.hpp"

#include "axtherm/errors.hpp"

namespace axtherm {

namespace {

// Failing checks keep the first few witnesses; that is enough to replay.
constexpr std::size_t kMaxWitnesses = 8;

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

CheckStatus check_status_from_string(const std::string& name) {
  if (name == "pass") return CheckStatus::pass;
  if (name == "fail") return CheckStatus::fail;
  if (name == "not_applicable") return CheckStatus::not_applicable;
  throw DomainError("unknown check status '" + name + "'");
}

void CheckResult::add_failure(Witness witness) {
  status = CheckStatus::fail;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
}

CheckResult not_applicable(std::string name, std::string message) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::not_applicable;
  r.message = std::move(message);
  return r;
}

}  // namespace axtherm
