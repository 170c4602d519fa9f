var exec = require('cordova/exec');

module.exports = {
    startReception: function (success, failure) {
        exec(success, failure, 'SmsReceiver', 'startReception', []);
    },
    stopReception: function (success, failure) {
        exec(success, failure, 'SmsReceiver', 'stopReception', []);
    }
};
