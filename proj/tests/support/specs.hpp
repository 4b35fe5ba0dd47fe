#pragma once

// Builders for NormalizedSpec instances used across the test suites.

#include "grabin/ltl.hpp"
#include "grabin/product.hpp"
#include "grabin/spec.hpp"
#include "support/oracles.hpp"

namespace testing_support {

inline grabin::NormalizedSpec normalized(const oracle::RandomSpec& spec)
{
    grabin::NormalizedSpec out(spec.inputs, spec.outputs);
    for (const auto& a : spec.assumptions)
        for (const auto& part : grabin::normalize(a, grabin::Role::Assumption))
            out.add(part);
    for (const auto& g : spec.guarantees)
        for (const auto& part : grabin::normalize(g, grabin::Role::Guarantee))
            out.add(part);
    return out;
}

inline grabin::NormalizedSpec ltl_spec(std::vector<std::string> inputs, std::vector<std::string> outputs,
                                       std::vector<std::string> assumptions, std::vector<std::string> guarantees)
{
    grabin::SpecProblem problem;
    problem.inputs = std::move(inputs);
    problem.outputs = std::move(outputs);
    for (auto& a : assumptions)
        problem.assumptions.push_back({grabin::ConjunctSource::Kind::Ltl, std::move(a)});
    for (auto& g : guarantees)
        problem.guarantees.push_back({grabin::ConjunctSource::Kind::Ltl, std::move(g)});
    return grabin::normalize_spec(problem);
}

}  // namespace testing_support
