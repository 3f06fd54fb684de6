#include <iostream>

#include "persistnet_app/app.hpp"

int main(int argc, char** argv) { return persistnet::app::run_cli(argc, argv, std::cout, std::cerr); }
