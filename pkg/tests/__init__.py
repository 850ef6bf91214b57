# thetaglue test suite.
