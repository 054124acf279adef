// One PASS/FAIL line per acceptance criterion; optional arguments select criteria by number.
#include "qzeta/acceptance.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    using namespace qzeta;
    CountConfig cfg = CountConfig::from_env();
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
    if (ids.empty())
        for (int i = 1; i <= (int)acceptance::criteria().size(); ++i) ids.push_back(i);
    int failed = 0;
    for (int id : ids) {
        auto r = acceptance::run_one(id, cfg);
        std::cout << acceptance::line(r) << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
